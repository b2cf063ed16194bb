// Command-line front end.  Every subcommand builds one JSON report; the
// plain-text output is rendered from that same object, so both forms carry
// identical values.
//
// Exit codes: 0 success, 1 usage or input error, 2 invalid fibration.

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"
#include "lefschetz/multicurve.hpp"
#include "lefschetz/sections.hpp"
#include "lefschetz/shear.hpp"
#include "lefschetz/teich.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace lefschetz;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;

struct Settings {
  bool json = false;
  std::uint64_t seed = 1;
  int depth = 2;
  int samples = 200;
  int threads = 1;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Fibration read_fibration(const std::string& path) {
  try {
    if (path == "-") {
      std::stringstream buf;
      buf << std::cin.rdbuf();
      return parse_fibration(buf.str());
    }
    return load_fibration(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------- rendering

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_table(const json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const json& row) { return row.is_object(); });
}

void render_table(std::ostream& out, const json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& [k, _] : rows.front().items()) cols.push_back(k);
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string s = row.contains(cols[i]) ? scalar_text(row[cols[i]]) : "-";
      width[i] = std::max(width[i], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << indent;
    for (std::size_t i = 0; i < line.size(); ++i)
      out << std::left << std::setw(static_cast<int>(width[i]) + (i + 1 < line.size() ? 2 : 0)) << line[i];
    out << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void render(std::ostream& out, const json& report, const std::string& indent = "") {
  for (const auto& [key, v] : report.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      render(out, v, indent + "  ");
    } else if (is_table(v)) {
      out << indent << key << ":\n";
      render_table(out, v, indent + "  ");
    } else if (v.is_array()) {
      out << indent << key << " = [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << "]\n";
    } else {
      out << indent << key << " = " << scalar_text(v) << "\n";
    }
  }
}

void emit(const Settings& s, const json& report) {
  if (s.json)
    std::cout << report.dump(2) << "\n";
  else
    render(std::cout, report);
}

// A fibration written as a file (so it can be piped), with the summary as
// comment lines.
void emit_fibration(const Settings& s, const Fibration& f, json report) {
  if (s.json) {
    json cycles = json::array();
    for (const auto& c : f.cycles) cycles.push_back(format_curve_spec(c));
    report["cycles"] = cycles;
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ostringstream head;
  render(head, report);
  std::istringstream lines(head.str());
  for (std::string line; std::getline(lines, line);) std::cout << "# " << line << "\n";
  std::cout << print_fibration(f);
}

// ---------------------------------------------------------------- reports

json summary(const Fibration& f) { return {{"genus", f.genus}, {"fibres", f.size()}}; }

json validity(const Fibration& f, const Validation& v) {
  json r = summary(f);
  r["valid"] = v.trivial_closed;
  if (v.trivial_closed) {
    r["witness"] = format_word(v.witness);
    r["k"] = v.k_standard ? json(*v.k_standard) : json(nullptr);
  }
  return r;
}

json invariants(const Fibration& f) {
  const int e = euler_char(f), sigma = signature_meyer(f);
  return {{"e", e}, {"sigma", sigma}, {"sigma_plus_e", sigma + e}, {"b1", invariant_cohomology_rank(f)}};
}

json fill_json(const Arrangement& a, int genus) {
  return {{"V", a.V}, {"E", a.E}, {"R", a.region_count()}, {"euler_bound", a.euler_bound(genus)}, {"fills", a.fills}};
}

json region_table(const Arrangement& a) {
  json rows = json::array();
  for (const auto& reg : a.regions)
    rows.push_back({{"region", reg.id},
                    {"euler_characteristic", reg.euler_characteristic},
                    {"cells", reg.cell_count},
                    {"area", reg.area}});
  return rows;
}

json section_table(const SectionAnalysis& s) {
  json rows = json::array();
  for (const auto& r : s.reports)
    rows.push_back({{"region", r.region},
                    {"base", r.base},
                    {"u", r.obstruction.empty() ? std::string("e") : format_word(r.obstruction)},
                    {"section", r.has_section},
                    {"self_intersection", r.self_intersection ? json(*r.self_intersection) : json(nullptr)},
                    {"arcs_agree", r.arcs_agree}});
  return rows;
}

json sections_json(const SectionAnalysis& s) {
  return {{"base_consistent", s.base_consistent},
          {"R", s.region_count()},
          {"half_bound", s.half_bound()},
          {"section_count", s.section_count()},
          {"sections", section_table(s)}};
}

json split_json(const Fibration& f) {
  json idx = json::array();
  for (int j : split_irreducibility_scan(f)) idx.push_back(j);
  return idx;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Settings& s, const std::string& path) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  emit(s, validity(f, v));
  return v.trivial_closed ? kExitOk : kExitInvalid;
}

int cmd_analyze(const Settings& s, const std::string& path) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  json r = validity(f, v);
  if (!v.trivial_closed) {
    r["e"] = euler_char(f);
    emit(s, r);
    return kExitInvalid;
  }
  r.update(invariants(f));
  const RotationResult rot = rotation_number(f, s.samples);
  r["rotation"] = {{"k", rot.k}, {"residual", rot.residual}, {"samples", rot.samples}};
  const SectionAnalysis sec = enumerate_sections(f, s.samples);
  r["fill"] = fill_json(sec.arrangement, f.genus);
  r.update(sections_json(sec));
  r["split_scan"] = split_json(f);
  auto inv = invariant_multicurve_search(f, s.depth);
  json mc = {{"bound", s.depth}, {"found", inv.has_value()}};
  if (inv) {
    json curves = json::array();
    for (const auto& c : *inv) curves.push_back(format_curve_spec(c));
    mc["curves"] = curves;
  }
  r["invariant_multicurve"] = mc;
  emit(s, r);
  return kExitOk;
}

int cmd_sections(const Settings& s, const std::string& path) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  json r = validity(f, v);
  if (!v.trivial_closed) {
    emit(s, r);
    return kExitInvalid;
  }
  r.update(sections_json(enumerate_sections(f, s.samples)));
  emit(s, r);
  return kExitOk;
}

int cmd_fill(const Settings& s, int genus, const std::vector<std::string>& curves, const std::string& file,
             bool regions) {
  std::vector<CurveSpec> specs;
  if (!file.empty()) {
    const Fibration f = read_fibration(file);
    genus = f.genus;
    specs = f.cycles;
  }
  if (genus < 2) throw UsageError("genus must be at least 2");
  for (const auto& c : curves) {
    try {
      specs.push_back(parse_curve_spec(c, genus));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const Arrangement a = arrangement(genus, specs);
  json r = {{"genus", genus}, {"curves", a.curves.size()}};
  r.update(fill_json(a, genus));
  json chi = json::array();
  for (const auto& reg : a.regions) chi.push_back(reg.euler_characteristic);
  r["region_euler_characteristics"] = chi;
  if (regions) r["regions"] = region_table(a);
  emit(s, r);
  return kExitOk;
}

int cmd_fibresum(const Settings& s, const std::vector<std::string>& paths, const std::string& gluing) {
  std::vector<Fibration> parts;
  for (const auto& p : paths) parts.push_back(read_fibration(p));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].genus != parts.front().genus) throw UsageError("fibre sum needs equal genera");
    if (!validate(parts[i]).trivial_closed) {
      std::cerr << paths[i] << ": invalid fibration\n";
      return kExitInvalid;
    }
  }
  TwistWord glue;
  try {
    glue = parse_twist_word(gluing, parts.front().genus);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Fibration sum = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) sum = fibre_sum(sum, parts[i], glue);
  json r = validity(sum, validate(sum));
  r.update(invariants(sum));
  emit_fibration(s, sum, r);
  return kExitOk;
}

int cmd_hurwitz(const Settings& s, const std::string& path, const std::vector<std::string>& moves, int random) {
  Fibration f = read_fibration(path);
  json applied = json::array();
  auto apply = [&](int i, HurwitzDirection dir) {
    f = hurwitz_move(f, i, dir);
    applied.push_back((dir == HurwitzDirection::Right ? "R" : "L") + std::to_string(i));
  };
  for (const auto& m : moves) {
    if (m.size() < 2 || (m[0] != 'R' && m[0] != 'L')) throw UsageError("move must look like R3 or L3: " + m);
    int i = 0;
    try {
      i = std::stoi(m.substr(1));
    } catch (const std::exception&) {
      throw UsageError("bad move index: " + m);
    }
    if (i < 1 || i >= static_cast<int>(f.size())) throw UsageError("move index out of range: " + m);
    apply(i, m[0] == 'R' ? HurwitzDirection::Right : HurwitzDirection::Left);
  }
  if (random > 0) {
    if (f.size() < 2) throw UsageError("random moves need at least two cycles");
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<int> pos(1, static_cast<int>(f.size()) - 1), side(0, 1);
    for (int k = 0; k < random; ++k) apply(pos(rng), side(rng) ? HurwitzDirection::Right : HurwitzDirection::Left);
  }
  const Validation v = validate(f);
  json r = validity(f, v);
  r["moves"] = applied;
  emit_fibration(s, f, r);
  return v.trivial_closed ? kExitOk : kExitInvalid;
}

int cmd_split_scan(const Settings& s, const std::string& path) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  json r = validity(f, v);
  if (!v.trivial_closed) {
    emit(s, r);
    return kExitInvalid;
  }
  json idx = split_json(f);
  r["splits"] = idx;
  r["irreducible"] = idx.empty();
  emit(s, r);
  return kExitOk;
}

json fn_json(const FNCoords& x) {
  json names = json::array();
  for (const auto& c : pants_curves(2)) names.push_back(c.name());
  return {{"pants", names}, {"lengths", x.lengths}, {"twists", x.twists}};
}

int cmd_length(const Settings& s, const std::string& path, int max_nodes) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  json r = validity(f, v);
  if (!v.trivial_closed) {
    emit(s, r);
    return kExitInvalid;
  }
  if (f.genus != 2) throw UsageError("length is implemented for genus 2");
  OrbitOptions opt;
  opt.max_nodes = max_nodes;
  opt.threads = s.threads;
  opt.seed = s.seed;
  const IntersectionSearch is = min_total_intersections(f, s.depth, opt);
  r["intersections"] = {{"best", is.best}, {"orbit_visited", is.orbit_visited}, {"best_by_depth", is.best_by_depth}};
  const Arrangement a = arrangement(f.genus, f.cycles);
  r["fills"] = a.fills;
  if (!a.fills) {
    r["length"] = {{"value", nullptr}, {"reason", "vanishing cycles do not fill; the minimum is not attained"}};
  } else {
    const LengthSearch ls = length_invariant(f, s.depth, opt);
    r["length"] = {{"value", ls.best},
                   {"depth", s.depth},
                   {"orbit_visited", ls.orbit_visited},
                   {"best_by_depth", ls.best_by_depth},
                   {"minimizer", fn_json(ls.minimizer)}};
  }
  emit(s, r);
  return kExitOk;
}

int cmd_shear(const Settings& s, const std::string& path, int cycle, const std::string& csv) {
  const Fibration f = read_fibration(path);
  const Validation v = validate(f);
  json r = validity(f, v);
  if (!v.trivial_closed) {
    emit(s, r);
    return kExitInvalid;
  }
  const RotationResult rot = rotation_number(f, s.samples);
  r["rotation"] = {{"k", rot.k},
                   {"mean", rot.mean},
                   {"residual", rot.residual},
                   {"samples", rot.samples},
                   {"factors_monotone", rot.factors_monotone}};
  if (!csv.empty()) {
    if (cycle < 0 || cycle > static_cast<int>(f.size())) throw UsageError("cycle index out of range");
    const MappingClass m = cycle == 0 ? monodromy(f) : cycle_twists(f)[cycle - 1];
    const CircleMap map = boundary_circle_map(m, s.samples);
    std::ofstream out(csv);
    if (!out) throw UsageError("cannot write " + csv);
    out << std::setprecision(17) << "angle_in,angle_out,displacement\n";
    for (const auto& p : map.samples) out << p.angle_in << "," << p.angle_out << "," << p.displacement << "\n";
    r["circle_map"] = {{"cycle", cycle},
                       {"file", csv},
                       {"samples", map.samples.size()},
                       {"monotone", map.monotone},
                       {"fixed_points", map.fixed_points},
                       {"max_gap", map.max_gap}};
  }
  emit(s, r);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lefschetz fibrations as positive Dehn twist factorizations"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_flag("--json", s.json, "structured output");
  app.add_option("--seed", s.seed, "random seed")->capture_default_str();
  app.add_option("--depth", s.depth, "search depth (Hurwitz orbit, multicurve bound)")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
  app.add_option("--samples", s.samples, "circle-at-infinity samples")->check(CLI::Range(100, 20000))->capture_default_str();
  app.add_option("--threads", s.threads, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();

  std::string path;
  auto* validate_cmd = app.add_subcommand("validate", "check that the monodromy is trivial");
  validate_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();
  auto* analyze_cmd = app.add_subcommand("analyze", "full report");
  analyze_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();
  auto* sections_cmd = app.add_subcommand("sections", "section classes and self-intersections");
  sections_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();

  int genus = 2;
  std::vector<std::string> curves;
  std::string fill_file;
  bool regions = false;
  auto* fill_cmd = app.add_subcommand("fill", "arrangement of curves: V, E, R and filling");
  fill_cmd->add_option("curves", curves, "curve specs such as c1 or \"(t1 T2) c3\"");
  fill_cmd->add_option("--genus", genus, "surface genus")->capture_default_str();
  fill_cmd->add_option("--file", fill_file, "take the curves from a fibration file");
  fill_cmd->add_flag("--regions", regions, "list the complementary regions");

  std::vector<std::string> parts;
  std::string gluing;
  auto* sum_cmd = app.add_subcommand("fibresum", "fibre sum of fibrations, printed as a fibration file");
  sum_cmd->add_option("files", parts, "fibration files")->required();
  sum_cmd->add_option("--gluing", gluing, "twist word conjugating each further summand");

  std::vector<std::string> moves;
  int random_moves = 0;
  auto* hurwitz_cmd = app.add_subcommand("hurwitz", "apply Hurwitz moves, printed as a fibration file");
  hurwitz_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();
  hurwitz_cmd->add_option("--move", moves, "R<i> or L<i>, applied in order");
  hurwitz_cmd->add_option("--random", random_moves, "further random moves (uses --seed)")->check(CLI::NonNegativeNumber);

  auto* split_cmd = app.add_subcommand("split-scan", "positions splitting the word into two factorizations");
  split_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();

  int max_nodes = 120;
  auto* length_cmd = app.add_subcommand("length", "length invariant and total intersections over a Hurwitz orbit");
  length_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();
  length_cmd->add_option("--max-nodes", max_nodes, "orbit nodes evaluated")->check(CLI::Range(1, 100000))->capture_default_str();

  int cycle = 0;
  std::string csv;
  auto* shear_cmd = app.add_subcommand("shear", "rotation number at infinity of the monodromy lift");
  shear_cmd->add_option("file", path, "fibration file ('-' for stdin)")->required();
  shear_cmd->add_option("--csv", csv, "dump the circle map (angle_in, angle_out) to this file");
  shear_cmd->add_option("--cycle", cycle, "circle map of this cycle's twist (0: whole monodromy)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(s, path);
    if (*analyze_cmd) return cmd_analyze(s, path);
    if (*sections_cmd) return cmd_sections(s, path);
    if (*fill_cmd) return cmd_fill(s, genus, curves, fill_file, regions);
    if (*sum_cmd) return cmd_fibresum(s, parts, gluing);
    if (*hurwitz_cmd) return cmd_hurwitz(s, path, moves, random_moves);
    if (*split_cmd) return cmd_split_scan(s, path);
    if (*length_cmd) return cmd_length(s, path, max_nodes);
    if (*shear_cmd) return cmd_shear(s, path, cycle, csv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
