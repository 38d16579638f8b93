#include "superdescent/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "superdescent/errors.hpp"

namespace superdescent {

using json = nlohmann::ordered_json;

namespace {

std::int64_t get_int(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InputError(std::string("spec is missing \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("spec field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::vector<std::string> parts;
  for (int v : values) parts.push_back(std::to_string(v));
  return join(parts, ",");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

std::string dual_string(const FieldTower& t, const AdditiveCharacter& theta) {
  std::vector<std::string> parts;
  for (FieldElement f : theta.dual_coords) parts.push_back(t.to_string(f));
  return "[" + join(parts, ",") + "]";
}

std::string element_string(const LevelStructure& level, ElementId id) {
  return level.algebra().to_string(level.element(id));
}

std::string orbit_rep_string(LevelStructure& level, std::uint32_t orbit) {
  return dual_string(level.tower(), level.character(level.dual_orbits()[orbit].rep));
}

std::vector<int> all_levels(const RunConfig& config, const std::vector<int>& extra) {
  std::vector<int> levels = config.levels;
  levels.insert(levels.end(), extra.begin(), extra.end());
  if (levels.empty()) throw InputError("at least one level is required");
  for (int n : levels)
    if (n < 1) throw InputError("levels must be positive integers");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

/// Representatives of the F^m-fixed orbits at level n, each an F^m-invariant character.
ElementId invariant_member(LevelStructure& level, std::uint32_t orbit, int twist) {
  for (ElementId f : level.dual_orbits()[orbit].members)
    if (is_f_invariant(level.tower(), level.character(f), twist)) return f;
  throw VerificationError("orbit " + std::to_string(orbit) + " has no Frobenius-invariant member");
}

struct IsometryOutcome {
  bool twisted_basis = true;
  bool random = true;
  bool supercharacters_defined = true;
  bool supercharacters = true;
};

IsometryOutcome isometry(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                         const SupercharacterTable& upper_table, int random_count) {
  const int m = corr.m;
  IsometryOutcome out;
  const FAction act = f_action_on_supercharacters(upper, upper_table, m);

  std::vector<TwistedClassFunction> basis, literal;
  for (std::uint32_t o : act.fixed) {
    basis.push_back(twisted_induction(upper, invariant_member(upper, o, m), m, false));
    try {
      literal.push_back(as_twisted(upper, upper_table.of_orbit(o).values, m));
    } catch (const NotTwistedClassFunction&) {
      out.supercharacters_defined = false;
    }
  }
  auto pairwise = [&](const std::vector<TwistedClassFunction>& fs) {
    std::vector<std::vector<CycValue>> down;
    for (const auto& f : fs) down.push_back(descend_to_classes(corr, f));
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (!(class_inner_product(lower, down[i], down[j]) == twisted_inner_product(upper, fs[i], fs[j])))
          return false;
    return true;
  };
  out.twisted_basis = pairwise(basis);
  out.supercharacters = out.supercharacters_defined && pairwise(literal);

  const auto randoms = random_twisted_functions(upper, m, random_count, 0x5eedULL + static_cast<std::uint64_t>(corr.n));
  for (std::size_t i = 0; i < randoms.size() && out.random; ++i) {
    const auto& a = randoms[i];
    const auto& b = randoms[(i + 1) % randoms.size()];
    const auto da = descend_to_classes(corr, a), db = descend_to_classes(corr, b);
    out.random = class_inner_product(lower, da, db) == twisted_inner_product(upper, a, b) &&
                 class_inner_product(lower, da, da) == twisted_inner_product(upper, a, a);
  }
  return out;
}

}  // namespace

AlgebraSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed spec: ") + e.what());
  }
  if (!j.is_object()) throw InputError("spec must be a JSON object");

  AlgebraSpec spec;
  const std::int64_t p = get_int(j, "p");
  if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError("p = " + std::to_string(p) + " is not a supported prime");
  spec.p = static_cast<std::uint32_t>(p);
  const std::int64_t d = j.contains("d") ? get_int(j, "d") : 1;
  if (d < 1 || d > 64) throw InputError("d must be a positive integer");
  spec.d = static_cast<std::uint32_t>(d);

  if (j.contains("builtin")) {
    if (!j.at("builtin").is_string()) throw InputError("\"builtin\" must be a string");
    const std::string family = j.at("builtin").get<std::string>();
    if (family == "ut")
      spec.builtin = BuiltinFamily::ut;
    else if (family == "abelian")
      spec.builtin = BuiltinFamily::abelian;
    else if (family == "truncpoly")
      spec.builtin = BuiltinFamily::truncpoly;
    else
      throw InputError("unknown builtin family \"" + family + "\"");
    if (!j.contains("params") || !j.at("params").is_array() || j.at("params").size() != 1 ||
        !j.at("params")[0].is_number_integer())
      throw InputError("builtin families take \"params\": [n]");
    spec.builtin_param = j.at("params")[0].get<int>();
    return spec;
  }

  const std::int64_t r = get_int(j, "r");
  if (r < 1 || r > 64) throw InputError("r must be a positive integer");
  spec.r = static_cast<int>(r);
  if (!j.contains("constants")) return spec;
  if (!j.at("constants").is_array()) throw InputError("\"constants\" must be an array");
  for (const json& entry : j.at("constants")) {
    if (!entry.is_object()) throw InputError("each structure constant must be an object");
    RawConstant c;
    c.i = static_cast<int>(get_int(entry, "i"));
    c.j = static_cast<int>(get_int(entry, "j"));
    c.k = static_cast<int>(get_int(entry, "k"));
    for (int idx : {c.i, c.j, c.k})
      if (idx < 1 || idx > spec.r)
        throw InputError("structure constant index " + std::to_string(idx) + " is outside [1, " +
                         std::to_string(spec.r) + "]");
    if (!entry.contains("coeff") || !entry.at("coeff").is_array() || entry.at("coeff").size() != spec.d)
      throw InputError("\"coeff\" must list " + std::to_string(spec.d) + " residues");
    for (const json& v : entry.at("coeff")) {
      if (!v.is_number_integer()) throw InputError("\"coeff\" entries must be integers");
      const auto x = v.get<std::int64_t>() % static_cast<std::int64_t>(spec.p);
      c.coeff.push_back(x < 0 ? x + spec.p : x);
    }
    spec.constants.push_back(std::move(c));
  }
  return spec;
}

AlgebraSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Session open_session(const AlgebraSpec& spec, const RunConfig& config, const std::vector<int>& extra) {
  const std::vector<int> levels = all_levels(config, extra);
  const std::uint64_t L = lcm_of(levels);
  if (L > 64) throw SizeBoundError("lcm of levels " + std::to_string(L) + " is too large");

  Session s;
  s.tower = build_tower(spec.p, spec.d, levels);
  if (spec.builtin) {
    s.algebra = std::make_shared<const NilpotentAlgebra>(builtin_algebra(*spec.builtin, spec.builtin_param, s.tower));
  } else {
    std::vector<ConstantEntry> entries;
    for (const auto& c : spec.constants)
      entries.push_back(ConstantEntry{c.i, c.j, c.k, s.tower->from_base_coordinates(c.coeff)});
    s.algebra = std::make_shared<const NilpotentAlgebra>(load_algebra(s.tower, spec.r, entries));
  }

  std::uint64_t total = 1;
  const std::uint64_t exponent = static_cast<std::uint64_t>(s.algebra->dim()) * L;
  for (std::uint64_t e = 0; e < exponent; ++e) {
    if (total > config.size_bound / s.tower->q())
      throw SizeBoundError("q^(r L) = " + std::to_string(s.tower->q()) + "^" + std::to_string(exponent) +
                           " exceeds the size bound " + std::to_string(config.size_bound));
    total *= s.tower->q();
  }
  s.lattice = std::make_unique<LevelLattice>(s.algebra, levels, config.size_bound);
  return s;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_tsv(const Report& report) {
  std::string out;
  for (std::size_t s = 0; s < report.size(); ++s) {
    const Section& sec = report[s];
    if (s) out += "\n";
    out += "# " + sec.name + "\n";
    out += join(sec.columns, "\t") + "\n";
    for (const auto& row : sec.rows) out += join(row, "\t") + "\n";
  }
  return out;
}

std::string render_json(const Report& report) {
  json sections = json::array();
  for (const auto& sec : report) {
    json rows = json::array();
    for (const auto& row : sec.rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < sec.columns.size(); ++c) obj[sec.columns[c]] = row.at(c);
      rows.push_back(std::move(obj));
    }
    sections.push_back(json{{"name", sec.name}, {"columns", sec.columns}, {"rows", std::move(rows)}});
  }
  return json{{"sections", std::move(sections)}}.dump(2) + "\n";
}

Report parse_tsv(const std::string& text) {
  Report report;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = s.find('\t', start);
      parts.push_back(s.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return parts;
  };
  bool expect_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      report.push_back(Section{line.substr(2), {}, {}});
      expect_header = true;
    } else if (report.empty()) {
      throw InputError("TSV report does not start with a section");
    } else if (expect_header) {
      report.back().columns = split(line);
      expect_header = false;
    } else {
      report.back().rows.push_back(split(line));
    }
  }
  return report;
}

Report parse_json(const std::string& text) {
  Report report;
  const json doc = json::parse(text);
  for (const auto& sec : doc.at("sections")) {
    Section s{sec.at("name").get<std::string>(), sec.at("columns").get<std::vector<std::string>>(), {}};
    for (const auto& row : sec.at("rows")) {
      std::vector<std::string> cells;
      for (const auto& col : s.columns) cells.push_back(row.at(col).get<std::string>());
      s.rows.push_back(std::move(cells));
    }
    report.push_back(std::move(s));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Reports

Report info_report(const AlgebraSpec& spec, const RunConfig& config) {
  Session s = open_session(spec, config);
  const NilpotentAlgebra& A = *s.algebra;
  const FieldTower& t = *s.tower;
  std::vector<std::string> powers;
  for (int dim : A.power_dimensions()) powers.push_back(std::to_string(dim));
  Section algebra{"algebra", {"key", "value"}, {}};
  algebra.rows = {{"p", std::to_string(t.p())},
                  {"d", std::to_string(t.d())},
                  {"q", std::to_string(t.q())},
                  {"r", std::to_string(A.dim())},
                  {"nilpotency_class", std::to_string(A.nilpotency_class())},
                  {"power_dimensions", join(powers, ",")},
                  {"levels", join_ints(s.lattice->levels())}};
  Section levels{"levels", {"level", "group_order", "superclasses", "supercharacters"}, {}};
  for (int n : s.lattice->levels()) {
    LevelStructure& level = s.lattice->structure(n);
    levels.rows.push_back({std::to_string(n), std::to_string(level.group_size()),
                           std::to_string(level.superclasses().size()), std::to_string(level.dual_orbits().size())});
  }
  return {algebra, levels};
}

Report table_report(const AlgebraSpec& spec, const RunConfig& config, int n) {
  Session s = open_session(spec, config, {n});
  LevelStructure& level = s.lattice->structure(n);
  const SupercharacterTable& table = s.lattice->table(n);
  const auto terms = regular_decomposition(table);
  const auto& classes = level.superclasses();

  Section values{"values", {"orbit_rep"}, {}};
  for (const auto& K : classes) values.columns.push_back(element_string(level, K.rep));
  Section rows{"supercharacters", {"row", "orbit_rep", "orbit_size", "degree", "norm", "multiplicity"}, {}};
  for (std::uint32_t i = 0; i < table.supercharacters().size(); ++i) {
    const Supercharacter& xi = table.supercharacters()[i];
    std::vector<std::string> cells{orbit_rep_string(level, xi.orbit)};
    for (const auto& v : xi.values.values) cells.push_back(v.to_string());
    values.rows.push_back(std::move(cells));
    rows.rows.push_back({std::to_string(i), orbit_rep_string(level, xi.orbit),
                         std::to_string(level.dual_orbits()[xi.orbit].members.size()), xi.degree.to_string(),
                         std::to_string(xi.norm), std::to_string(terms[i].multiplicity)});
  }
  Section cols{"superclasses", {"column", "rep", "size"}, {}};
  for (std::uint32_t k = 0; k < classes.size(); ++k)
    cols.rows.push_back({std::to_string(k), element_string(level, classes[k].rep),
                         std::to_string(classes[k].member_ids.size())});
  return {values, rows, cols};
}

namespace {

struct ShintaniData {
  Report report;
  bool ok = true;
};

ShintaniData shintani_data(const AlgebraSpec& spec, const RunConfig& config, int n, int m) {
  if (m < 1 || n < 1 || n % m != 0)
    throw InputError("level " + std::to_string(m) + " does not divide level " + std::to_string(n));
  Session s = open_session(spec, config, {n, m});
  LevelLattice& lat = *s.lattice;
  LevelStructure& upper = lat.structure(n);
  LevelStructure& lower = lat.structure(m);
  const SupercharacterTable& upper_table = lat.table(n);
  const SupercharacterTable& lower_table = lat.table(m);
  const NormCorrespondence& corr = lat.correspondence(n, m);
  const auto& fclasses = upper.f_classes(m);
  const auto& target = lower.conjugacy_classes();

  Section norm{"norm_map", {"twisted_class", "rep", "size", "norm", "target_rep", "target_size"}, {}};
  for (std::uint32_t c = 0; c < fclasses.size(); ++c) {
    const GroupElement N = norm_element(upper.algebra(), upper.group_element(fclasses[c].rep), n, m);
    const FClass& image = target.at(corr.forward[c]);
    norm.rows.push_back({std::to_string(c), element_string(upper, fclasses[c].rep),
                         std::to_string(fclasses[c].member_ids.size()), upper.algebra().to_string(N.body),
                         element_string(lower, image.rep), std::to_string(image.member_ids.size())});
  }

  const FAction act = f_action_on_supercharacters(upper, upper_table, m);
  const auto matches = corr.certified_bijection ? descend_all_characters(upper, lower, upper_table, lower_table, corr)
                                                : std::vector<DescentMatch>{};
  std::map<std::uint32_t, DescentMatch> by_upper;
  std::size_t literal_ok = 0, twisted_ok = 0;
  for (const auto& mt : matches) {
    literal_ok += mt.matches ? 1 : 0;
    twisted_ok += mt.twisted_matches ? 1 : 0;
    auto [it, inserted] = by_upper.emplace(mt.upper_row, mt);
    if (!inserted && it->second.lower_row != mt.lower_row)
      throw VerificationError("one supercharacter at level " + std::to_string(n) + " matches two at level " +
                              std::to_string(m));
  }

  Section corr_sec{"correspondence",
                   {"upper_row", "upper_rep", "upper_degree", "lower_row", "lower_rep", "lower_degree",
                    "twisted_class_function", "descends_to_lower", "twisted_extension_descends"},
                   {}};
  std::size_t twisted_class_count = 0;
  for (const auto& [row, mt] : by_upper) {
    twisted_class_count += mt.twisted_class ? 1 : 0;
    corr_sec.rows.push_back({std::to_string(row), orbit_rep_string(upper, row),
                             upper_table.of_orbit(row).degree.to_string(), std::to_string(mt.lower_row),
                             orbit_rep_string(lower, mt.lower_row), lower_table.of_orbit(mt.lower_row).degree.to_string(),
                             yes_no(mt.twisted_class), mt.twisted_class ? yes_no(mt.matches) : "undefined",
                             yes_no(mt.twisted_matches)});
  }

  IsometryOutcome iso;
  if (corr.certified_bijection) iso = isometry(upper, lower, corr, upper_table, 100);

  const bool fixed_rows_match = by_upper.size() == act.fixed.size() &&
                                std::all_of(act.fixed.begin(), act.fixed.end(),
                                            [&](std::uint32_t o) { return by_upper.count(o) == 1; });
  Section summary{"summary", {"key", "value"}, {}};
  auto ratio = [](std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); };
  summary.rows = {
      {"from_level", std::to_string(n)},
      {"to_level", std::to_string(m)},
      {"twisted_classes", std::to_string(fclasses.size())},
      {"target_classes", std::to_string(target.size())},
      {"certified_bijection", yes_no(corr.certified_bijection)},
      {"fixed_supercharacters", std::to_string(act.fixed.size())},
      {"target_supercharacters", std::to_string(lower_table.supercharacters().size())},
      {"fixed_rows_are_lifts", yes_no(fixed_rows_match)},
      {"fixed_twisted_class_functions", ratio(twisted_class_count, by_upper.size())},
      {"supercharacter_descent", ratio(literal_ok, matches.size())},
      {"twisted_extension_descent", ratio(twisted_ok, matches.size())},
      {"isometry_fixed_supercharacters", iso.supercharacters_defined ? pass_fail(iso.supercharacters) : "undefined"},
      {"isometry_twisted_extensions", pass_fail(iso.twisted_basis)},
      {"isometry_random_functions", pass_fail(iso.random)},
  };
  ShintaniData out;
  out.report = {summary, corr_sec, norm};
  out.ok = corr.certified_bijection && fixed_rows_match && act.fixed.size() == lower_table.supercharacters().size() &&
           literal_ok == matches.size() && twisted_ok == matches.size() && iso.supercharacters && iso.twisted_basis &&
           iso.random;
  return out;
}

}  // namespace

Report shintani_report(const AlgebraSpec& spec, const RunConfig& config, int n, int m) {
  return shintani_data(spec, config, n, m).report;
}

std::vector<CheckResult> run_checks(const AlgebraSpec& spec, const RunConfig& config) {
  Session s = open_session(spec, config);
  LevelLattice& lat = *s.lattice;
  const FieldTower& t = *s.tower;
  std::vector<CheckResult> out;
  auto check = [&](const std::string& name, const std::string& scope, const std::function<std::string()>& body) {
    CheckResult r{name, scope, true, ""};
    try {
      r.detail = body();
      if (r.detail.rfind("FAIL", 0) == 0) {
        r.passed = false;
        r.detail = r.detail.size() > 5 ? r.detail.substr(5) : "";
      }
    } catch (const Error& e) {
      r.passed = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };
  auto fail = [](const std::string& why) { return "FAIL " + why; };

  for (int n : lat.levels()) {
    const std::string scope = "level " + std::to_string(n);
    LevelStructure& level = lat.structure(n);
    const SupercharacterTable& table = lat.table(n);
    const auto& classes = level.superclasses();
    const auto& orbits = level.dual_orbits();

    check("generators_span_group", scope, [&]() -> std::string {
      return level.generators_span_group() ? "" : fail("generating set does not reach every element");
    });
    check("superclass_partition", scope, [&]() -> std::string {
      std::uint64_t total = 0;
      for (const auto& K : classes) total += K.member_ids.size();
      if (total != level.group_size()) return fail("superclass sizes do not sum to the group order");
      return std::to_string(classes.size()) + " superclasses";
    });
    check("orbit_stabiliser", scope, [&]() -> std::string {
      const std::uint64_t g = level.group_size();
      for (const auto& o : orbits) {
        const AdditiveCharacter theta = level.character(o.rep);
        const std::uint64_t left = level.left_orbit(o.rep).size();
        const std::uint64_t right = level.right_orbit(o.rep).size();
        const std::uint64_t l_order = level.subgroup_order(static_cast<int>(level.left_centraliser(theta).size()));
        const std::uint64_t r_order = level.subgroup_order(static_cast<int>(level.right_centraliser(theta).size()));
        const std::uint64_t gamma = level.subgroup_order(level.gamma_centraliser_dim(theta));
        if (left != o.left_orbit_size || left * l_order != g || right * r_order != g || left != right ||
            o.members.size() * gamma != g * g || o.members.size() * o.biinvariant_size != left * right)
          return fail("orbit of " + dual_string(t, theta));
      }
      return std::to_string(orbits.size()) + " orbits";
    });
    check("orbit_formula_vs_class_sum", scope, [&]() -> std::string {
      for (ElementId f = 0; f < level.group_size(); ++f) {
        const auto& row = table.of_character(f).values.values;
        for (std::uint32_t k = 0; k < classes.size(); ++k)
          if (!(supercharacter_by_class_sum(level, f, k) == row[k]))
            return fail(dual_string(t, level.character(f)) + " at " + element_string(level, classes[k].rep));
      }
      return "";
    });
    if (config.slow_oracle) {
      check("induction_oracle", scope, [&]() -> std::string {
        for (const auto& o : orbits) {
          const auto& row = table.of_character(o.rep).values;
          if (!(induced_character_oracle(level, o.rep, CentraliserSide::left) == row) ||
              !(induced_character_oracle(level, o.rep, CentraliserSide::right) == row))
            return fail(dual_string(t, level.character(o.rep)));
        }
        return "";
      });
    }
    check("identity_column_is_degree", scope, [&]() -> std::string {
      for (const auto& xi : table.supercharacters())
        if (!(xi.values.values[0] == xi.degree)) return fail(orbit_rep_string(level, xi.orbit));
      return "";
    });
    check("orthogonality", scope, [&]() -> std::string {
      const auto& rows = table.supercharacters();
      std::vector<const SuperclassFunction*> fs;
      for (const auto& xi : rows) fs.push_back(&xi.values);
      const auto gram = gram_matrix(level, fs);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
          const CycValue expected =
              CycValue::integer(t.p(), i == j ? static_cast<std::int64_t>(rows[i].norm) : 0);
          if (!(gram[i][j] == expected)) return fail("rows " + std::to_string(i) + " and " + std::to_string(j));
        }
      return "";
    });
    check("regular_decomposition", scope, [&]() -> std::string {
      const auto terms = regular_decomposition(table);
      std::vector<std::string> parts;
      for (const auto& term : terms) parts.push_back(std::to_string(term.multiplicity));
      return "multiplicities " + join(parts, ",");
    });
    if (n > 1) {
      check("frobenius_fixed_supercharacters", scope, [&]() -> std::string {
        const FAction act = f_action_on_supercharacters(level, table, 1);
        const std::size_t base = lat.table(1).supercharacters().size();
        if (act.fixed.size() != base)
          return fail(std::to_string(act.fixed.size()) + " fixed, " + std::to_string(base) + " at level 1");
        return std::to_string(act.fixed.size()) + " fixed";
      });
      check("fixed_supercharacters_constant_on_twisted_classes", scope, [&]() -> std::string {
        const FAction act = f_action_on_supercharacters(level, table, 1);
        std::vector<std::string> bad;
        for (std::uint32_t o : act.fixed) {
          try {
            as_twisted(level, table.of_orbit(o).values, 1);
          } catch (const NotTwistedClassFunction& e) {
            bad.push_back(orbit_rep_string(level, o) + ": " + e.what());
          }
        }
        return bad.empty() ? "" : fail(join(bad, "; "));
      });
      check("twisted_induction_equals_supercharacter", scope, [&]() -> std::string {
        const FAction act = f_action_on_supercharacters(level, table, 1);
        std::vector<std::string> bad;
        for (std::uint32_t o : act.fixed)
          if (!twisted_induction_check(level, table, invariant_member(level, o, 1), 1))
            bad.push_back(orbit_rep_string(level, o));
        return bad.empty() ? "" : fail("differs for " + join(bad, ", "));
      });
    }
  }

  for (int m : lat.levels()) {
    for (int n : lat.levels()) {
      if (n == m || n % m != 0) continue;
      const std::string scope = std::to_string(n) + "->" + std::to_string(m);
      LevelStructure& upper = lat.structure(n);
      LevelStructure& lower = lat.structure(m);
      check("norm_map_bijection", scope, [&]() -> std::string {
        const NormCorrespondence& corr = lat.correspondence(n, m);
        if (!corr.certified_bijection) return fail("norm map is not a bijection");
        return std::to_string(corr.forward.size()) + " classes";
      });
      check("dual_trace_lift_image", scope, [&]() -> std::string {
        std::set<std::vector<FieldElement>> image, fixed;
        for (ElementId f = 0; f < lower.group_size(); ++f)
          image.insert(dual_trace_lift(t, lower.character(f), n).dual_coords);
        for (ElementId f = 0; f < upper.group_size(); ++f) {
          const AdditiveCharacter theta = upper.character(f);
          if (is_f_invariant(t, theta, m)) fixed.insert(theta.dual_coords);
        }
        if (image != fixed) return fail("lift image differs from the fixed dual characters");
        return std::to_string(image.size()) + " characters";
      });
      check("trace_relation", scope, [&]() -> std::string {
        return trace_relation_check(lat, m, n) ? "" : fail("theta(a) != tau(Tr(a)) somewhere");
      });
      check("linear_character_descent", scope, [&]() -> std::string {
        for (ElementId tau = 0; tau < lower.group_size(); ++tau)
          if (!linear_character_descent_check(upper, lower, tau)) return fail(dual_string(t, lower.character(tau)));
        return "";
      });
      check("frobenius_fixed_count", scope, [&]() -> std::string {
        const FAction act = f_action_on_supercharacters(upper, lat.table(n), m);
        if (act.fixed.size() != lat.table(m).supercharacters().size())
          return fail(std::to_string(act.fixed.size()) + " fixed");
        return std::to_string(act.fixed.size()) + " fixed";
      });
      const NormCorrespondence& corr = lat.correspondence(n, m);
      if (!corr.certified_bijection) continue;
      check("supercharacter_descent", scope, [&]() -> std::string {
        std::vector<std::string> bad;
        for (const auto& mt : descend_all_characters(upper, lower, lat.table(n), lat.table(m), corr))
          if (!mt.matches)
            bad.push_back(dual_string(t, lower.character(mt.tau)) +
                          (mt.twisted_class ? "" : " (not constant on twisted classes)"));
        return bad.empty() ? "" : fail(join(bad, "; "));
      });
      check("twisted_extension_descent", scope, [&]() -> std::string {
        for (const auto& mt : descend_all_characters(upper, lower, lat.table(n), lat.table(m), corr))
          if (!mt.twisted_matches) return fail(dual_string(t, lower.character(mt.tau)));
        return "";
      });
      check("isometry", scope, [&]() -> std::string {
        const IsometryOutcome iso = isometry(upper, lower, corr, lat.table(n), 100);
        if (!iso.twisted_basis || !iso.random) return fail("inner products are not preserved");
        if (!iso.supercharacters_defined) return fail("fixed supercharacters are not all twisted class functions");
        return iso.supercharacters ? "" : fail("fixed supercharacter inner products are not preserved");
      });
      check("transition_norm_pullback", scope, [&]() -> std::string {
        std::vector<std::string> literal;
        for (std::uint32_t r = 0; r < lower.dual_orbits().size(); ++r) {
          const Transition tr = transition(lat, m, r, n, true);
          if (!tr.pullback_is_twisted_induction) return fail("pullback of row " + std::to_string(r));
          if (!tr.pullback_is_supercharacter) literal.push_back(orbit_rep_string(lower, r));
        }
        return literal.empty() ? "" : fail("pullback is not the lifted supercharacter for " + join(literal, ", "));
      });
    }
  }

  check("superdual_classes", "lattice", [&]() -> std::string {
    const auto classes = superdual_classes(lat);
    std::size_t base = 0;
    for (const auto& c : classes) base += c.minimal_level == 1 ? 1 : 0;
    if (base != lat.table(1).supercharacters().size()) return fail(std::to_string(base) + " of minimal level 1");
    return std::to_string(classes.size()) + " classes";
  });
  check("serre_dual_classes", "lattice", [&]() -> std::string {
    const auto classes = serre_dual_classes(lat);
    std::size_t base = 0;
    for (const auto& c : classes) base += c.minimal_level == 1 ? 1 : 0;
    if (base != lat.structure(1).group_size()) return fail(std::to_string(base) + " of minimal level 1");
    return std::to_string(classes.size()) + " classes";
  });
  check("transition_coherence", "lattice", [&]() -> std::string {
    const CoherenceReport rep = coherence_check(lat);
    if (rep.failures) return fail(std::to_string(rep.failures) + " of " + std::to_string(rep.chains_checked));
    return std::to_string(rep.chains_checked) + " chains";
  });
  check("psi_basis", "lattice", [&]() -> std::string { return psi_basis_check(lat) ? "" : fail("not a basis"); });
  check("orbit_intersection", "lattice",
        [&]() -> std::string { return orbit_intersection_check(lat) ? "" : fail("intersection differs"); });
  check("scalar_action", "lattice", [&]() -> std::string {
    LevelStructure& base = lat.structure(1);
    std::size_t count = 0;
    for (int l : lat.levels()) {
      for (FieldElement alpha : t.prime_basis(l)) {
        for (ElementId f = 0; f < base.group_size(); ++f) {
          const AdditiveCharacter theta = base.character(f);
          const AdditiveCharacter image = scalar_action(lat, alpha, theta);
          AdditiveCharacter direct{image.level, {}};
          for (FieldElement x : theta.dual_coords) direct.dual_coords.push_back(t.mul(alpha, x));
          if (!(image == direct)) return fail(t.to_string(alpha) + " on " + dual_string(t, theta));
          ++count;
        }
      }
    }
    return std::to_string(count) + " products";
  });
  return out;
}

Report verify_report(const AlgebraSpec& spec, const RunConfig& config) {
  Section checks{"checks", {"name", "scope", "status", "detail"}, {}};
  for (const auto& c : run_checks(spec, config)) checks.rows.push_back({c.name, c.scope, pass_fail(c.passed), c.detail});
  return {checks};
}

Report superdual_report(const AlgebraSpec& spec, const RunConfig& config) {
  Session s = open_session(spec, config);
  LevelLattice& lat = *s.lattice;
  const FieldTower& t = *s.tower;

  auto members_string = [](const auto& members) {
    std::vector<std::string> parts;
    for (const auto& [level, id] : members) parts.push_back(std::to_string(level) + ":" + std::to_string(id));
    return join(parts, ";");
  };
  const auto classes = superdual_classes(lat);
  Section sd{"superdual_classes", {"class", "minimal_level", "rep", "members", "degrees"}, {}};
  std::map<int, std::size_t> sd_by_level, serre_by_level;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    ++sd_by_level[c.minimal_level];
    sd.rows.push_back({std::to_string(i), std::to_string(c.minimal_level),
                       orbit_rep_string(lat.structure(c.minimal_level), c.members.at(c.minimal_level)),
                       members_string(c.members), members_string(c.degrees)});
  }
  const auto serre = serre_dual_classes(lat);
  Section sc{"serre_dual_classes", {"class", "minimal_level", "coords", "members"}, {}};
  for (std::size_t i = 0; i < serre.size(); ++i) {
    const auto& c = serre[i];
    ++serre_by_level[c.minimal_level];
    sc.rows.push_back({std::to_string(i), std::to_string(c.minimal_level),
                       dual_string(t, AdditiveCharacter{c.minimal_level, c.coords}), members_string(c.members)});
  }
  const CoherenceReport coh = coherence_check(lat);
  Section summary{"summary", {"key", "value"}, {}};
  summary.rows = {{"levels", join_ints(lat.levels())},
                  {"superdual_classes", std::to_string(classes.size())},
                  {"superdual_by_minimal_level", members_string(sd_by_level)},
                  {"serre_dual_classes", std::to_string(serre.size())},
                  {"serre_by_minimal_level", members_string(serre_by_level)},
                  {"coherence_chains", std::to_string(coh.chains_checked)},
                  {"coherence", pass_fail(coh.failures == 0)},
                  {"psi_basis", pass_fail(psi_basis_check(lat))},
                  {"orbit_intersection", pass_fail(orbit_intersection_check(lat))}};
  return {summary, sd, sc};
}

// ---------------------------------------------------------------------------
// Commands

namespace {

CommandResult run_guarded(const RunConfig& config, const std::function<std::pair<Report, bool>()>& body) {
  CommandResult r;
  try {
    auto [report, ok] = body();
    r.output = config.format == OutputFormat::json ? render_json(report) : render_tsv(report);
    r.exit_code = ok ? kOk : kVerificationFailure;
    if (!ok) r.error = "verification failed";
  } catch (const SizeBoundError& e) {
    r.exit_code = kSizeBound;
    r.error = e.what();
  } catch (const InputError& e) {
    r.exit_code = kInputError;
    r.error = e.what();
  } catch (const VerificationError& e) {
    r.exit_code = kVerificationFailure;
    r.error = e.what();
  }
  return r;
}

bool all_pass(const Report& report, const std::string& section, const std::string& column) {
  for (const auto& sec : report) {
    if (sec.name != section) continue;
    const auto col = std::find(sec.columns.begin(), sec.columns.end(), column) - sec.columns.begin();
    for (const auto& row : sec.rows)
      if (row.at(col) == "fail") return false;
  }
  return true;
}

bool summary_passes(const Report& report) {
  for (const auto& sec : report)
    if (sec.name == "summary")
      for (const auto& row : sec.rows)
        if (row.at(1) == "fail") return false;
  return true;
}

}  // namespace

CommandResult cmd_info(const AlgebraSpec& spec, const RunConfig& config) {
  return run_guarded(config, [&] { return std::make_pair(info_report(spec, config), true); });
}

CommandResult cmd_table(const AlgebraSpec& spec, const RunConfig& config, int level) {
  return run_guarded(config, [&] { return std::make_pair(table_report(spec, config, level), true); });
}

CommandResult cmd_shintani(const AlgebraSpec& spec, const RunConfig& config, int n, int m) {
  return run_guarded(config, [&] {
    ShintaniData d = shintani_data(spec, config, n, m);
    return std::make_pair(std::move(d.report), d.ok);
  });
}

CommandResult cmd_verify(const AlgebraSpec& spec, const RunConfig& config) {
  return run_guarded(config, [&] {
    Report r = verify_report(spec, config);
    const bool ok = all_pass(r, "checks", "status");
    return std::make_pair(std::move(r), ok);
  });
}

CommandResult cmd_superdual(const AlgebraSpec& spec, const RunConfig& config) {
  return run_guarded(config, [&] {
    Report r = superdual_report(spec, config);
    const bool ok = summary_passes(r);
    return std::make_pair(std::move(r), ok);
  });
}

}  // namespace superdescent
