// theta2: command-line front end for the Theta_2 combinatorics library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "theta2/anodyne.hpp"
#include "theta2/error.hpp"
#include "theta2/simplicial.hpp"
#include "theta2/twocat.hpp"

using namespace theta2;
using nlohmann::json;

namespace {

struct Args {
  std::string shape_pos;
  std::string shape;
  int k = -1;
  int i = -1;
  std::string shuffle;
  std::string set;
  int bound = 4;
  int max_dim = 3;
  std::string format = "text";
  bool dot = false;
  std::string script;
  std::string target;
  std::string family = "inner";
  std::string op;
  std::string file;
  int m = 0, n = 0;
};

ThetaShape shape_of(const Args& a) {
  const std::string& text = a.shape_pos.empty() ? a.shape : a.shape_pos;
  if (text.empty()) throw ParseError("a shape is required (positional or --shape)");
  return parse_shape(text);
}

bool as_json(const Args& a) { return a.format == "json"; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string slug(std::string s) {
  for (auto& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

void save_report(const std::string& name, const json& j) {
  const char* dir = std::getenv("THETA2_REPORT_DIR");
  if (!dir || !*dir) return;
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / (slug(name) + ".json")) << j.dump(2) << "\n";
}

void list_cells(const Subobject& sub, const Args& a, const std::string& name) {
  std::vector<std::string> gens, cells;
  for (auto& c : sub.generators()) gens.push_back(sub.ambient().format(c));
  for (auto& c : sub.cells()) cells.push_back(sub.ambient().format(c));
  if (as_json(a)) {
    emit({{"name", name}, {"generators", gens}, {"cells", cells}});
    return;
  }
  std::cout << name << ": " << cells.size() << " nondegenerate cells\n";
  for (auto& g : gens) std::cout << "  " << g << "\n";
}

int cmd_enumerate(const Args& a) {
  auto shapes = all_shapes(a.max_dim);
  if (as_json(a)) {
    json j = json::array();
    for (auto& s : shapes) j.push_back({{"shape", to_string(s)}, {"dim", s.dim()}});
    emit(j);
  } else {
    for (auto& s : shapes) std::cout << to_string(s) << "  dim " << s.dim() << "\n";
  }
  return 0;
}

int cmd_classify(const Args& a) {
  auto f = parse_cellular(a.op);
  auto r = reedy_factor(f);
  std::string kind = f == identity(f.dst()) ? "identity"
                     : r.degeneracy == identity(f.src()) ? "face"
                     : r.face == identity(f.dst())       ? "degeneracy"
                                                         : "composite";
  std::string hyper;
  for (auto& l : hyperface_labels(f.dst()))
    if (hyperface(f.dst(), l) == f) hyper = to_string(l) + (is_outer(f.dst(), l) ? " (outer)" : " (inner)");
  if (as_json(a)) {
    emit({{"operator", to_string(f)},
          {"kind", kind},
          {"degeneracy", to_string(r.degeneracy)},
          {"face", to_string(r.face)},
          {"hyperface", hyper}});
  } else {
    std::cout << to_string(f) << "\n  kind: " << kind << "\n  degeneracy: " << to_string(r.degeneracy)
              << "\n  face: " << to_string(r.face) << "\n";
    if (!hyper.empty()) std::cout << "  hyperface: " << hyper << "\n";
  }
  return 0;
}

int cmd_hyperfaces(const Args& a) {
  auto s = shape_of(a);
  json j = json::array();
  for (auto& l : hyperface_labels(s)) {
    j.push_back({{"label", to_string(l)},
                 {"outer", is_outer(s, l)},
                 {"source", to_string(hyperface_source(s, l))},
                 {"operator", to_string(hyperface(s, l))}});
  }
  if (as_json(a)) {
    emit(j);
  } else {
    for (auto& e : j)
      std::cout << e["label"].get<std::string>() << "  " << (e["outer"].get<bool>() ? "outer" : "inner") << "  "
                << e["source"].get<std::string>() << "  " << e["operator"].get<std::string>() << "\n";
  }
  return 0;
}

int cmd_horn(const Args& a) {
  auto s = shape_of(a);
  if (a.k < 0) throw ParseError("horn needs --k");
  Inclusion inc = !a.shuffle.empty() ? horn_h_alt(s, a.k, parse_shuffle(a.shuffle))
                  : a.i >= 0         ? horn_v(s, a.k, a.i)
                                     : horn_h(s, a.k);
  list_cells(inc.domain, a, inc.name);
  return 0;
}

int cmd_spine(const Args& a) {
  auto s = shape_of(a);
  auto inc = a.set.empty() ? spine(s) : spine_S(s, parse_hyperface_set(a.set));
  list_cells(inc.domain, a, inc.name);
  return 0;
}

int cmd_boundary(const Args& a) {
  auto inc = boundary(shape_of(a));
  list_cells(inc.domain, a, inc.name);
  return 0;
}

int cmd_shuffles(const Args& a) {
  auto all = shuffles(a.m, a.n);
  if (a.dot || a.format == "dot") {
    std::cout << shuffle_poset_dot(a.m, a.n);
    return 0;
  }
  json j = json::array();
  for (auto& s : all) {
    std::vector<std::string> up;
    for (auto& t : s.successors()) up.push_back(to_string(t));
    j.push_back({{"shuffle", to_string(s)},
                 {"lower_corners", s.lower_corners()},
                 {"upper_corners", s.upper_corners()},
                 {"covers", up}});
  }
  if (as_json(a)) {
    emit(j);
  } else {
    for (auto& e : j) {
      std::cout << e["shuffle"].get<std::string>();
      auto up = e["covers"].get<std::vector<std::string>>();
      if (!up.empty()) std::cout << "  < " << join(up, ", ");
      std::cout << "\n";
    }
  }
  return 0;
}

void print_report(const ReplayReport& r, const Args& a) {
  if (as_json(a)) {
    emit(r.to_json());
    return;
  }
  std::cout << r.script << " " << r.params.dump() << "\n";
  for (auto& s : r.steps) {
    std::cout << "  #" << s.index << " " << s.stage << " " << s.cell << " along " << to_json(s.horn).dump()
              << (s.checks.ok() ? "  ok" : "  FAILED") << "\n";
    for (auto& f : s.failures) std::cout << "      " << f << "\n";
  }
  for (auto& n : r.notes) std::cout << "  note: " << n << "\n";
  for (auto& f : r.failures) std::cout << "  failure: " << f << "\n";
  std::cout << (r.ok() ? "decomposition certified" : "verification failed") << " through dim " << r.certified_dim
            << "\n";
}

std::vector<Shuffle> shuffle_list(const std::string& text) {
  std::vector<Shuffle> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (part.find_first_not_of(" ") != std::string::npos) out.push_back(parse_shuffle(part));
  return out;
}

ReplayReport run_script(const Args& a) {
  ReplayOptions opt;
  opt.bound = a.bound;
  const auto& sc = a.script;
  auto s = shape_of(a);
  auto labels = [&] { return parse_hyperface_set(a.set); };
  if (sc == "spine-anodyne") return spine_anodyne(s, opt);
  if (sc == "sigma") return sigma_S(s, labels(), opt);
  if (sc == "upsilon-vertical") return upsilon_vertical(s, labels(), opt);
  if (sc == "upsilon-full") return upsilon_full(s, labels(), opt);
  if (sc == "oury") return oury_from_alt(s, labels(), opt);
  if (sc == "alt-trivial") {
    if (a.k < 0 || a.shuffle.empty()) throw ParseError("alt-trivial needs --k and --shuffle");
    return alt_trivial(s, a.k, parse_shuffle(a.shuffle), shuffle_list(a.set), opt);
  }
  if (sc == "vert-equiv") {
    if (a.k < 0) throw ParseError("vert-equiv needs --k");
    return vert_equiv(s, a.k, opt);
  }
  if (sc == "horiz-equiv") return horiz_equiv(s, opt);
  throw ParseError("unknown script '" + sc + "'");
}

int verify_all(const Args& a) {
  json summary = {{"max_dim", a.max_dim}, {"bound", a.bound}};
  std::map<std::string, int> runs, failed;
  json failures = json::array();
  auto record = [&](const ReplayReport& r) {
    ++runs[r.script];
    if (r.ok()) return;
    ++failed[r.script];
    failures.push_back(r.to_json());
  };
  for (auto& s : all_shapes(a.max_dim)) {
    record(spine_anodyne(s));
    for (auto& S : downward_closed_outer_sets(s)) record(sigma_S(s, S));
    for (auto& S : admissible_sets(s, true)) record(upsilon_vertical(s, S));
    for (auto& S : admissible_sets(s, false)) record(upsilon_full(s, S));
    for (auto& S : oury_sets(s)) record(oury_from_alt(s, S));
    for (int k = 1; k <= s.n - 1; ++k)
      for (auto& al : shuffles(s.qk(k), s.qk(k + 1)))
        for (auto& I : alt_index_sets(al)) record(alt_trivial(s, k, al, I));
  }
  ReplayOptions opt;
  opt.bound = a.bound;
  for (auto& s : all_shapes(a.max_dim)) {
    if (s.n == 0 || s.dim() + 1 > a.bound) continue;
    for (int k = 1; k <= s.n; ++k)
      if (s.qk(k) == 0) record(vert_equiv(s, k, opt));
    record(horiz_equiv(s, opt));
  }
  summary["runs"] = runs;
  summary["failed"] = failed;
  summary["failures"] = failures;
  summary["status"] = failures.empty() ? "all decompositions certified" : "verification failed";
  save_report("verify_all", summary);
  if (as_json(a)) {
    emit(summary);
  } else {
    for (auto& [name, count] : runs)
      std::cout << name << ": " << count << " runs, " << (failed.count(name) ? failed[name] : 0) << " failed\n";
    std::cout << summary["status"].get<std::string>() << "\n";
  }
  return failures.empty() ? 0 : 1;
}

int cmd_verify(const Args& a) {
  if (a.script == "all") return verify_all(a);
  auto r = run_script(a);
  auto j = r.to_json();
  save_report(r.script + "_" + to_string(shape_of(a)), j);
  print_report(r, a);
  if (r.ok()) return 0;
  if (!as_json(a)) std::cerr << j.dump(2) << "\n";
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CellularSetPtr lift_target(const Args& a) {
  if (a.target == "J") return from_simplicial(SimplicialSubset::interval(), a.bound);
  if (!a.target.empty() && a.target.front() == '[') return representable(parse_shape(a.target), a.bound);
  return nerve(parse_2cat(read_file(a.target)), a.bound);
}

int cmd_lift(const Args& a) {
  auto rep = lift_check(lift_target(a), a.family, a.bound);
  auto j = rep.to_json();
  save_report("lift_" + a.family, j);
  if (as_json(a)) {
    emit(j);
  } else {
    std::cout << rep.family << " horns of dim <= " << rep.bound - 1 << ": " << rep.horns << " horns, " << rep.maps
              << " maps, " << rep.filled << " filled\n";
    for (auto& m : rep.missing) std::cout << "  no filler for " << m.horn << ": " << join(m.images, ", ") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_nerve(const Args& a) {
  auto N = nerve(parse_2cat(read_file(a.file)), a.bound);
  json j = {{"name", N->name()}, {"bound", a.bound}, {"cells", json::array()}};
  for (auto& s : all_shapes(a.bound))
    j["cells"].push_back({{"shape", to_string(s)},
                          {"cells", N->cells(s).size()},
                          {"nondegenerate", N->nondegenerate(s).size()}});
  if (as_json(a)) {
    emit(j);
  } else {
    std::cout << N->name() << "\n";
    for (auto& e : j["cells"])
      std::cout << "  " << e["shape"].get<std::string>() << "  " << e["cells"] << " cells, " << e["nondegenerate"]
                << " nondegenerate\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta_2 cellular combinatorics: shapes, horns, gluing replays and lifting checks"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* c, bool shape) {
    if (shape) {
      c->add_option("shape_text", a.shape_pos, "shape such as [2;0,1]");
      c->add_option("--shape", a.shape, "shape such as [2;0,1]");
    }
    c->add_option("--format", a.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  };

  auto* en = app.add_subcommand("enumerate", "list shapes up to a dimension");
  en->add_option("--max-dim", a.max_dim);
  common(en, false);

  auto* cl = app.add_subcommand("classify", "classify a cellular operator");
  cl->add_option("operator", a.op, "e.g. [{0,1};{0}]:[1;0]->[2;0,1]")->required();
  common(cl, false);

  auto* hf = app.add_subcommand("hyperfaces", "list hyperfaces of a shape");
  common(hf, true);

  auto* ho = app.add_subcommand("horn", "horn inclusion (--k; --i for vertical, --shuffle for alternative)");
  common(ho, true);
  ho->add_option("--k", a.k);
  ho->add_option("--i", a.i);
  ho->add_option("--shuffle", a.shuffle);

  auto* sp = app.add_subcommand("spine", "spine, or spine with the hyperfaces in --set");
  common(sp, true);
  sp->add_option("--set", a.set);

  auto* bd = app.add_subcommand("boundary", "boundary of a shape");
  common(bd, true);

  auto* sh = app.add_subcommand("shuffles", "shuffle poset Sh(m,n)");
  sh->add_option("m", a.m)->required()->check(CLI::NonNegativeNumber);
  sh->add_option("n", a.n)->required()->check(CLI::NonNegativeNumber);
  sh->add_flag("--dot", a.dot, "Hasse diagram in DOT");
  common(sh, false);

  auto* ve = app.add_subcommand("verify", "replay a decomposition and check every gluing square");
  ve->add_option("script", a.script,
                 "spine-anodyne, sigma, upsilon-vertical, upsilon-full, oury, alt-trivial, vert-equiv, horiz-equiv "
                 "or all")
      ->required();
  common(ve, true);
  ve->add_option("--k", a.k);
  ve->add_option("--shuffle", a.shuffle);
  ve->add_option("--set", a.set, "hyperface labels, or shuffles for alt-trivial, separated by ';'");
  ve->add_option("--bound", a.bound, "truncation D");
  ve->add_option("--max-dim", a.max_dim);

  auto* li = app.add_subcommand("lift", "search for horn fillers in J, a representable or a nerve");
  li->add_option("target", a.target, "J, a shape, or a 2-category file")->required();
  li->add_option("--family", a.family)->check(CLI::IsMember({"inner", "inner-h", "inner-v", "alt-h"}));
  li->add_option("--bound", a.bound);
  common(li, false);

  auto* ne = app.add_subcommand("nerve", "cell counts of the nerve of a finite 2-category");
  ne->add_option("file", a.file)->required();
  ne->add_option("--bound", a.bound);
  common(ne, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*en) return cmd_enumerate(a);
    if (*cl) return cmd_classify(a);
    if (*hf) return cmd_hyperfaces(a);
    if (*ho) return cmd_horn(a);
    if (*sp) return cmd_spine(a);
    if (*bd) return cmd_boundary(a);
    if (*sh) return cmd_shuffles(a);
    if (*ve) return cmd_verify(a);
    if (*li) return cmd_lift(a);
    if (*ne) return cmd_nerve(a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  return 2;
}
