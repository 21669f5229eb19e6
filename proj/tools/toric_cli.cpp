#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "toric/euler.hpp"
#include "toric/io.hpp"

// Command-line front end.  Exit codes: 0 analysis completed, 1 invalid
// input, 2 inconclusive (monoid search bound exhausted, or a dim >= 3 fan
// without the `complete: true` assertion where completeness is required).

using namespace toric;
using nlohmann::json;

namespace {

struct Options {
  bool json_output = false;
  long long search_bound = -1;

  MonoidSearchOptions monoid() const {
    MonoidSearchOptions o;
    if (search_bound >= 0) o.bound = search_bound;
    return o;
  }
};

std::string rho(int i) { return "rho_" + std::to_string(i + 1); }

std::string vec_str(const IntVector& v) {
  std::ostringstream out;
  out << "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v(i);
  }
  out << ")";
  return out.str();
}

json report_skeleton(const std::string& command, const std::string& path,
                     const std::string& bytes) {
  json r;
  r["command"] = command;
  r["input"] = json{{"path", path}, {"digest", input_digest(bytes)}};
  r["verdicts"] = json::object();
  r["witnesses"] = json::object();
  r["diagnostics"] = json::array();
  return r;
}

json collection_to_json(const CompleteCollection& cc) {
  json roots = json::array();
  for (const auto& root : cc.roots)
    roots.push_back(json{{"e", vector_to_json(root.e)},
                         {"distinguished_ray", root.distinguished}});
  return json{{"basis_rays", cc.basis_rays}, {"roots", std::move(roots)}};
}

json class_to_json(const ClassElement& x) {
  json torsion = json::array();
  for (const auto& t : x.torsion_part) torsion.push_back(to_int64(t));
  return json{{"free", vector_to_json(x.free_part)},
              {"torsion", std::move(torsion)}};
}

void emit(const Options& opts, const json& report, double millis,
          const std::vector<std::string>& details = {}) {
  if (opts.json_output) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::cout << report["command"].get<std::string>() << " "
            << report["input"]["path"].get<std::string>() << " (digest "
            << report["input"]["digest"].get<std::string>() << ")\n";
  for (const auto& item : report["verdicts"].items())
    std::cout << "  " << item.key() << ": " << item.value().dump() << "\n";
  for (const auto& line : details) std::cout << "  " << line << "\n";
  for (const auto& diag : report["diagnostics"])
    std::cout << "note: " << diag.get<std::string>() << "\n";
  std::cout << "completed in " << millis << " ms\n";
}

std::vector<std::string> collection_lines(const CompleteCollection& cc) {
  std::vector<std::string> out;
  std::ostringstream line;
  line << "basis rays:";
  for (int i : cc.basis_rays) line << " " << rho(i);
  out.push_back(line.str());
  for (const auto& root : cc.roots)
    out.push_back("root at " + rho(root.distinguished) + ": e = " +
                  vec_str(root.e));
  return out;
}

// Commands that need completeness cannot proceed on a dim >= 3 fan whose
// file does not assert it; dim <= 2 is verified exactly.
bool completeness_gate(const FanData& data, json& report) {
  if (data.dim >= 3 && !data.asserted_complete) {
    report["diagnostics"].push_back(
        "completeness of a fan of dimension >= 3 cannot be verified; add "
        "\"complete\": true to the input to assert it");
    return false;
  }
  if (data.dim >= 3)
    report["diagnostics"].push_back(
        "completeness asserted by the input, not verified; results are "
        "conditional on it");
  return true;
}

// Lexicographically first subset of ray indices whose classes form a basis
// of a torsion-free Cl(X) expressing every class with nonnegative
// coefficients.  Presentation helper for the relations section.
struct Relations {
  std::vector<int> basis_rays;
  std::vector<IntVector> coefficients;  // one per ray
};

std::optional<Relations> effective_relations(const ClassGroup& cg) {
  if (!cg.torsion().empty()) return std::nullopt;
  const Index k = cg.free_rank();
  const int r = cg.num_rays();
  if (k < 1 || k > static_cast<Index>(r)) return std::nullopt;
  std::vector<int> subset(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) subset[static_cast<size_t>(i)] = static_cast<int>(i);
  auto next = [&]() {
    const int kk = static_cast<int>(subset.size());
    for (int i = kk - 1; i >= 0; --i) {
      if (subset[static_cast<size_t>(i)] < r - kk + i) {
        ++subset[static_cast<size_t>(i)];
        for (int j = i + 1; j < kk; ++j)
          subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    IntMatrix b(k, k);
    for (Index j = 0; j < k; ++j)
      b.col(j) = cg.divisor_class(subset[static_cast<size_t>(j)]).free_part;
    Int d = det(b);
    if (d != 1 && d != -1) continue;
    IntMatrix inv = unimodular_inverse(b);
    Relations rel;
    rel.basis_rays = subset;
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      IntVector c = inv * cg.divisor_class(i).free_part;
      for (Index j = 0; j < k; ++j)
        if (c(j) < 0) ok = false;
      rel.coefficients.push_back(std::move(c));
    }
    if (ok) return rel;
  } while (next());
  return std::nullopt;
}

std::string relation_string(const Relations& rel, int ray) {
  std::ostringstream out;
  out << "[D_" << ray + 1 << "] = ";
  const IntVector& c = rel.coefficients[static_cast<size_t>(ray)];
  bool first = true;
  for (Index j = 0; j < c.size(); ++j) {
    if (c(j) == 0) continue;
    if (!first) out << " + ";
    if (c(j) != 1) out << c(j);
    out << "[D_" << rel.basis_rays[static_cast<size_t>(j)] + 1 << "]";
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

int cmd_check_additive(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  FanData data = parse_fan_document(bytes);
  json report = report_skeleton("check-additive", path, bytes);
  if (!completeness_gate(data, report)) {
    emit(opts, report, 0);
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  Fan f(std::move(data));
  auto cc = admits_additive_action(f);
  report["verdicts"]["admits_additive_action"] = cc.has_value();
  std::vector<std::string> details;
  if (cc) {
    report["witnesses"]["complete_collection"] = collection_to_json(*cc);
    details = collection_lines(*cc);
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_demazure_roots(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  FanData data = parse_fan_document(bytes);
  json report = report_skeleton("demazure-roots", path, bytes);
  if (!completeness_gate(data, report)) {
    emit(opts, report, 0);
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  Fan f(std::move(data));
  auto roots = demazure_roots(f);
  report["verdicts"]["num_roots"] = roots.size();
  json list = json::array();
  std::vector<std::string> details;
  for (const auto& root : roots) {
    list.push_back(json{{"e", vector_to_json(root.e)},
                        {"distinguished_ray", root.distinguished}});
    details.push_back("e = " + vec_str(root.e) + ", distinguished at " +
                      rho(root.distinguished));
  }
  report["witnesses"]["roots"] = std::move(list);
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_class_group(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  FanData data = parse_fan_document(bytes);
  json report = report_skeleton("class-group", path, bytes);
  auto t0 = std::chrono::steady_clock::now();
  Fan f(std::move(data));
  ClassGroup cg(f);
  report["verdicts"]["free_rank"] = static_cast<long long>(cg.free_rank());
  json torsion = json::array();
  for (const auto& d : cg.torsion()) torsion.push_back(to_int64(d));
  report["verdicts"]["torsion"] = std::move(torsion);
  json classes = json::array();
  for (int i = 0; i < cg.num_rays(); ++i)
    classes.push_back(class_to_json(cg.divisor_class(i)));
  report["witnesses"]["divisor_classes"] = std::move(classes);
  std::vector<std::string> details;
  {
    std::ostringstream grp;
    grp << "Cl(X) = Z^" << cg.free_rank();
    for (const auto& d : cg.torsion()) grp << " x Z/" << d;
    details.push_back(grp.str());
  }
  if (auto rel = effective_relations(cg)) {
    json expressed = json::array();
    std::vector<std::string> strings;
    for (int i = 0; i < cg.num_rays(); ++i) {
      if (std::find(rel->basis_rays.begin(), rel->basis_rays.end(), i) !=
          rel->basis_rays.end())
        continue;
      expressed.push_back(
          json{{"ray", i},
               {"coefficients",
                vector_to_json(rel->coefficients[static_cast<size_t>(i)])}});
      strings.push_back(relation_string(*rel, i));
    }
    report["witnesses"]["relations"] =
        json{{"basis_rays", rel->basis_rays}, {"expressed", std::move(expressed)},
             {"text", strings}};
    std::ostringstream basis;
    basis << "free basis:";
    for (int i : rel->basis_rays) basis << " [D_" << i + 1 << "]";
    details.push_back(basis.str());
    for (const auto& s : strings) details.push_back(s);
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_orbits(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  FanData data = parse_fan_document(bytes);
  json report = report_skeleton("orbits", path, bytes);
  if (!completeness_gate(data, report)) {
    emit(opts, report, 0);
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  Fan f(std::move(data));
  ClassGroup cg(f);
  auto mopts = opts.monoid();
  Upsilon ups = upsilon(f, cg, mopts);
  auto admissible = admissible_ray_permutations(f, cg, ups, mopts);
  EulerOrbitReport orbit_report = classify_euler_orbits(f, mopts);

  // Orbit-equivalence classes over all cones.
  std::vector<int> orbit_class(ups.cones.size(), -1);
  std::vector<size_t> reps;
  for (size_t i = 0; i < ups.cones.size(); ++i) {
    for (size_t c = 0; c < reps.size(); ++c) {
      if (bazhov_equivalent(f, ups.cones[i], ups.cones[reps[c]], cg, ups,
                            admissible, mopts)
              .has_value()) {
        orbit_class[i] = static_cast<int>(c);
        break;
      }
    }
    if (orbit_class[i] < 0) {
      orbit_class[i] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  }

  json cones = json::array();
  bool all_smooth = true, all_euler = true;
  for (size_t i = 0; i < ups.cones.size(); ++i) {
    const auto& rec = orbit_report.records[i];
    json entry;
    entry["label"] = cone_label(rec.cone);
    entry["rays"] = rec.cone.ray_indices;
    entry["smooth"] = rec.smooth;
    entry["monoid_class"] = ups.assignment[i];
    entry["orbit_class"] = orbit_class[i];
    if (rec.euler.has_value()) {
      entry["euler"] = *rec.euler;
      if (!*rec.euler) all_euler = false;
    } else {
      entry["euler"] = nullptr;
    }
    if (!rec.smooth) {
      all_smooth = false;
      all_euler = false;
    }
    if (rec.witness) {
      entry["euler_witness"] =
          json{{"fixed_point_cone", cone_label(rec.witness->first)},
               {"ray_permutation", rec.witness->second.ray_permutation}};
    }
    cones.push_back(std::move(entry));
  }
  json monoids = json::array();
  for (size_t c = 0; c < ups.representatives.size(); ++c) {
    json gens = json::array();
    for (const auto& g : ups.representatives[c].generators)
      gens.push_back(class_to_json(g));
    json members = json::array();
    for (size_t i = 0; i < ups.cones.size(); ++i)
      if (ups.assignment[i] == static_cast<int>(c))
        members.push_back(cone_label(ups.cones[i]));
    monoids.push_back(json{{"generators", std::move(gens)},
                           {"cones", std::move(members)}});
  }
  report["verdicts"]["num_cones"] = ups.cones.size();
  report["verdicts"]["num_monoid_classes"] = ups.representatives.size();
  report["verdicts"]["num_orbit_classes"] = reps.size();
  report["verdicts"]["all_orbits_euler"] = all_smooth && all_euler;
  report["witnesses"]["cones"] = std::move(cones);
  report["witnesses"]["monoid_classes"] = std::move(monoids);
  std::vector<std::string> details;
  for (size_t i = 0; i < ups.cones.size(); ++i) {
    const auto& rec = orbit_report.records[i];
    std::ostringstream line;
    line << cone_label(rec.cone) << ": "
         << (rec.smooth ? "smooth" : "singular");
    if (rec.euler.has_value())
      line << (*rec.euler ? ", Euler" : ", not Euler");
    line << ", monoid class " << ups.assignment[i] << ", orbit class "
         << orbit_class[i];
    if (rec.witness) line << " (to " << cone_label(rec.witness->first) << ")";
    details.push_back(line.str());
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_check_inscribed(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  PolytopeData data = parse_polytope_document(bytes);
  json report = report_skeleton("check-inscribed", path, bytes);
  auto t0 = std::chrono::steady_clock::now();
  LatticePolytope p(data.dim, std::move(data.vertices));
  auto w = is_inscribed_in_rectangle(p);
  report["verdicts"]["inscribed_in_rectangle"] = w.has_value();
  std::vector<std::string> details;
  if (w) {
    json basis = json::array();
    std::ostringstream line;
    line << "edge basis:";
    for (const auto& e : w->edge_basis) {
      basis.push_back(vector_to_json(e));
      line << " " << vec_str(e);
    }
    report["witnesses"]["rectangle_witness"] =
        json{{"v0", vector_to_json(w->v0)}, {"edge_basis", std::move(basis)}};
    details.push_back("v0 = " + vec_str(w->v0));
    details.push_back(line.str());
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_check_very_ample(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  PolytopeData data = parse_polytope_document(bytes);
  json report = report_skeleton("check-very-ample", path, bytes);
  auto t0 = std::chrono::steady_clock::now();
  LatticePolytope p(data.dim, std::move(data.vertices));
  report["verdicts"]["very_ample"] = is_very_ample(p);
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count());
  return 0;
}

int cmd_normal_fan(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  PolytopeData data = parse_polytope_document(bytes);
  LatticePolytope p(data.dim, std::move(data.vertices));
  Fan nf = normal_fan(p);
  json doc = fan_to_json(nf);
  if (opts.json_output) {
    // The machine output is itself a fan document, so it can be fed back in.
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "normal fan of " << path << ":\n";
    for (int i = 0; i < nf.num_rays(); ++i)
      std::cout << "  " << rho(i) << " = " << vec_str(nf.ray(i)) << "\n";
    for (const auto& c : nf.max_cones())
      std::cout << "  cone " << cone_label(c) << "\n";
    std::cout << doc.dump(2) << "\n";
  }
  return 0;
}

int cmd_fundamental_form(const std::string& path, const Options& opts) {
  std::string bytes = read_file(path);
  PolytopeData data = parse_polytope_document(bytes);
  json report = report_skeleton("fundamental-form", path, bytes);
  auto t0 = std::chrono::steady_clock::now();
  LatticePolytope p(data.dim, std::move(data.vertices));
  bool va = is_very_ample(p);
  report["verdicts"]["very_ample"] = va;
  if (!va) {
    report["diagnostics"].push_back(
        "the polytope is not very ample; it defines no projectively normal "
        "embedding and no monomial fundamental form is computed");
    emit(opts, report, 0);
    return 0;
  }
  auto w = is_inscribed_in_rectangle(p);
  report["verdicts"]["inscribed_in_rectangle"] = w.has_value();
  if (!w) {
    report["diagnostics"].push_back(
        "no rectangle witness: the variety is not Euler-symmetric and the "
        "monomial exponent set is not defined");
    emit(opts, report, 0);
    return 0;
  }
  auto form = fundamental_form(p, *w);
  auto action = euler_action(p, *w);
  json basis = json::array();
  for (const auto& e : w->edge_basis) basis.push_back(vector_to_json(e));
  report["witnesses"]["rectangle_witness"] =
      json{{"v0", vector_to_json(w->v0)}, {"edge_basis", std::move(basis)}};
  json exps = json::array();
  for (const auto& a : form.exponents) exps.push_back(vector_to_json(a));
  report["witnesses"]["exponents"] = std::move(exps);
  json grading = json::object();
  for (const auto& [deg, members] : form.grading) {
    json level = json::array();
    for (const auto& a : members) level.push_back(vector_to_json(a));
    grading[std::to_string(deg)] = std::move(level);
  }
  report["witnesses"]["grading"] = std::move(grading);
  json weights = json::array();
  for (const auto& wt : action.ambient_weights) weights.push_back(to_int64(wt));
  report["witnesses"]["euler_action"] =
      json{{"lambda", vector_to_json(action.lambda)},
           {"ambient_weights", std::move(weights)}};
  report["verdicts"]["num_monomials"] = form.exponents.size();
  std::vector<std::string> details;
  details.push_back("v0 = " + vec_str(w->v0));
  details.push_back("lambda = " + vec_str(action.lambda));
  {
    std::ostringstream line;
    line << "monomials by degree:";
    for (const auto& [deg, members] : form.grading)
      line << " " << deg << ":" << members.size();
    details.push_back(line.str());
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

int cmd_euler_symmetric(const std::string& fan_path,
                        const std::string& polytope_path, const Options& opts) {
  if (fan_path.empty() == polytope_path.empty())
    throw CLI::ValidationError(
        "euler-symmetric requires exactly one of --fan or --polytope");
  if (!fan_path.empty()) {
    std::string bytes = read_file(fan_path);
    FanData data = parse_fan_document(bytes);
    json report = report_skeleton("euler-symmetric", fan_path, bytes);
    report["verdicts"]["route"] = "fan";
    if (!completeness_gate(data, report)) {
      emit(opts, report, 0);
      return 2;
    }
    auto t0 = std::chrono::steady_clock::now();
    Fan f(std::move(data));
    bool verdict = is_euler_symmetric(f);
    report["verdicts"]["euler_symmetric"] = verdict;
    std::vector<std::string> details;
    if (verdict) {
      auto cc = admits_additive_action(f);
      report["witnesses"]["complete_collection"] = collection_to_json(*cc);
      details = collection_lines(*cc);
    }
    auto t1 = std::chrono::steady_clock::now();
    emit(opts, report,
         std::chrono::duration<double, std::milli>(t1 - t0).count(), details);
    return 0;
  }
  std::string bytes = read_file(polytope_path);
  PolytopeData data = parse_polytope_document(bytes);
  json report = report_skeleton("euler-symmetric", polytope_path, bytes);
  report["verdicts"]["route"] = "polytope";
  auto t0 = std::chrono::steady_clock::now();
  LatticePolytope p(data.dim, std::move(data.vertices));
  bool verdict = is_euler_symmetric(p);  // throws NotVeryAmple -> exit 1
  report["verdicts"]["euler_symmetric"] = verdict;
  std::vector<std::string> details;
  if (verdict) {
    auto w = is_inscribed_in_rectangle(p);
    json basis = json::array();
    for (const auto& e : w->edge_basis) basis.push_back(vector_to_json(e));
    report["witnesses"]["rectangle_witness"] =
        json{{"v0", vector_to_json(w->v0)}, {"edge_basis", std::move(basis)}};
    details.push_back("v0 = " + vec_str(w->v0));
  }
  auto t1 = std::chrono::steady_clock::now();
  emit(opts, report, std::chrono::duration<double, std::milli>(t1 - t0).count(),
       details);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification of complete/projective toric varieties: "
               "additive actions, Demazure roots, divisor class groups, "
               "orbit equivalence, Euler symmetry"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options opts;
  app.add_flag("--json", opts.json_output, "machine-readable output");
  app.add_option("--search-bound", opts.search_bound,
                 "coefficient cap for monoid searches on non-pointed cones");

  std::string fan_path, polytope_path;

  auto* check_additive =
      app.add_subcommand("check-additive", "decide existence of an additive action");
  check_additive->add_option("--fan", fan_path, "fan document")->required();

  auto* demazure =
      app.add_subcommand("demazure-roots", "enumerate all Demazure roots");
  demazure->add_option("--fan", fan_path, "fan document")->required();

  auto* class_grp =
      app.add_subcommand("class-group", "divisor class group presentation");
  class_grp->add_option("--fan", fan_path, "fan document")->required();

  auto* orbits = app.add_subcommand(
      "orbits", "orbit equivalence classes and Euler flags per cone");
  orbits->add_option("--fan", fan_path, "fan document")->required();

  auto* inscribed = app.add_subcommand(
      "check-inscribed", "inscribed-in-a-rectangle test for a polytope");
  inscribed->add_option("--polytope", polytope_path, "polytope document")
      ->required();

  auto* very_ample = app.add_subcommand("check-very-ample",
                                        "saturation of all vertex semigroups");
  very_ample->add_option("--polytope", polytope_path, "polytope document")
      ->required();

  auto* normal = app.add_subcommand("normal-fan",
                                    "normal fan of a full-dimensional polytope");
  normal->add_option("--polytope", polytope_path, "polytope document")
      ->required();

  auto* fund = app.add_subcommand(
      "fundamental-form", "monomial fundamental form at a rectangle witness");
  fund->add_option("--polytope", polytope_path, "polytope document")->required();

  auto* euler_sym = app.add_subcommand("euler-symmetric",
                                       "decide Euler symmetry of the variety");
  euler_sym->add_option("--fan", fan_path, "fan document");
  euler_sym->add_option("--polytope", polytope_path, "polytope document");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_additive->parsed()) return cmd_check_additive(fan_path, opts);
    if (demazure->parsed()) return cmd_demazure_roots(fan_path, opts);
    if (class_grp->parsed()) return cmd_class_group(fan_path, opts);
    if (orbits->parsed()) return cmd_orbits(fan_path, opts);
    if (inscribed->parsed()) return cmd_check_inscribed(polytope_path, opts);
    if (very_ample->parsed()) return cmd_check_very_ample(polytope_path, opts);
    if (normal->parsed()) return cmd_normal_fan(polytope_path, opts);
    if (fund->parsed()) return cmd_fundamental_form(polytope_path, opts);
    if (euler_sym->parsed())
      return cmd_euler_symmetric(fan_path, polytope_path, opts);
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
