#include "tame3/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "tame3/amalgam.hpp"
#include "tame3/certify.hpp"
#include "tame3/discdiag.hpp"
#include "tame3/error.hpp"
#include "tame3/links.hpp"
#include "tame3/nabla.hpp"
#include "tame3/svg.hpp"
#include "tame3/valuation.hpp"

namespace tame3 {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "tame3/1";
constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& x : out) {
    size_t a = x.find_first_not_of(" \t"), b = x.find_last_not_of(" \t");
    x = a == std::string::npos ? "" : x.substr(a, b - a + 1);
  }
  return out;
}

TameWord parse_word(const std::string& s) {
  std::vector<Automorphism> maps;
  for (auto& part : split(s, ';'))
    if (!part.empty()) maps.push_back(Automorphism::parse(part));
  if (maps.empty()) throw Error(Errc::Syntax, "empty word");
  return TameWord::from(maps);
}

std::string row_str(const std::array<long, 3>& r) {
  // c·α ≥ 0 written as positive side ≥ negative side
  std::string lhs, rhs;
  for (int i = 0; i < 3; ++i) {
    if (!r[i]) continue;
    long c = std::labs(r[i]);
    std::string term = (c == 1 ? "" : std::to_string(c)) + "a" + std::to_string(i + 1);
    std::string& side = r[i] > 0 ? lhs : rhs;
    side += (side.empty() ? "" : "+") + term;
  }
  return (lhs.empty() ? "0" : lhs) + ">=" + (rhs.empty() ? "0" : rhs);
}

Json cycle_json(const LinkCycle& c, const Classification& cl) {
  Json segs = Json::array();
  for (auto& s : c.segments)
    segs.push_back({{"chamber", s.chamber.str()},
                    {"from", s.from.label},
                    {"to", s.to.label},
                    {"sweep", s.sweep},
                    {"length", s.length},
                    {"length_over_pi", s.length / kPi}});
  return {{"vertex", c.vertex.str()},
          {"segments", segs},
          {"total_length", c.total_length},
          {"total_over_pi", c.total_length / kPi},
          {"class", cycle_class_name(cl.kind)},
          {"runs", cl.shape.runs},
          {"winding", cl.shape.winding},
          {"s_passes", cl.shape.s_passes},
          {"epsilon", cl.epsilon}};
}

DiscDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IOError, "cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(Errc::Syntax, path + ": " + e.what());
  }
  DiscDiagram d;
  try {
    d.arr = arrangement(Window::parse(j.at("window").get<std::string>()));
    for (auto& f : j.at("faces"))
      d.faces.push_back({f.at("arr_face_id").get<int>(), Automorphism::parse(f.value("chamber", "(x1,x2,x3)"))});
    if (j.contains("gluings"))
      for (auto& g : j.at("gluings")) d.gluings.push_back({g.at(0), g.at(1), g.at(2), g.at(3)});
    else
      d.glue_adjacent();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Syntax, path + ": " + e.what());
  }
  return d;
}

Json report_json(const SweepReport& r, bool plain) {
  auto cell = [&](const SweepCase& c) {
    Json j;
    if (plain)
      j = {{"d", c.d}};
    else
      j = {{"p", c.p}, {"m", c.m}};
    j["r"] = c.r;
    j["t"] = c.t;
    j["u"] = c.u;
    j["sample"] = c.sample;
    j["kernel_dim"] = c.kernel_dim;
    return j;
  };
  Json v = Json::array(), w = Json::array();
  for (auto& c : r.violations) v.push_back(cell(c));
  for (auto& c : r.witnesses) w.push_back(cell(c));
  return {{"instances", r.instances}, {"violations", v}, {"witnesses", w}, {"wall_time", r.wall_time}};
}

std::vector<std::array<Polynomial, 3>> load_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IOError, "cannot read " + path);
  std::vector<std::array<Polynomial, 3>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, ';');
    if (parts.size() != 3) throw Error(Errc::Syntax, "form lines need three forms separated by ';'");
    out.push_back({Polynomial::parse(parts[0]), Polynomial::parse(parts[1]), Polynomial::parse(parts[2])});
  }
  return out;
}

int default_jobs() {
  if (const char* e = std::getenv("TAME3_JOBS")) {
    int j = std::atoi(e);
    if (j > 0) return j;
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tame3: tame automorphisms of affine 3-space, their valuations and weight-space geometry"};
  app.require_subcommand(1);
  bool json = false;
  unsigned seed = 0;
  int jobs = default_jobs();
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--seed", seed, "seed for randomized commands")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads for sweeps (default from TAME3_JOBS)");

  std::string weight, poly, map_text, window, group, word, chambers, junctions, sweeps, diagram, out_path;
  bool interior = false;

  auto* val = app.add_subcommand("val", "valuation of a polynomial at a weight");
  val->add_option("--weight", weight)->required();
  val->add_option("--poly", poly)->required();
  val->add_option("--chamber", map_text, "automorphism labelling the chamber");

  auto* fixed = app.add_subcommand("fixed-region", "inequalities cutting out the fixed region");
  fixed->add_option("--map", map_text)->required();

  auto* stab = app.add_subcommand("stab", "stabilizer test and decomposition");
  stab->add_option("--map", map_text)->required();
  stab->add_option("--weight", weight)->required();

  auto* lines = app.add_subcommand("lines", "admissible lines through a weight");
  lines->add_option("--weight", weight)->required();
  lines->add_flag("--interior", interior, "only lines meeting the interior of the dominant chamber");

  auto* arrange = app.add_subcommand("arrange", "arrangement of admissible lines in a window");
  arrange->add_option("--window", window)->required();

  int random_count = 0;
  auto* link = app.add_subcommand("link-cycle", "build and classify a cycle in the link of a vertex");
  link->add_option("--weight", weight)->required();
  link->add_option("--chambers", chambers, "automorphisms separated by ';'");
  link->add_option("--junctions", junctions, "directions separated by ';': s, q or [a,b,c]");
  link->add_option("--sweeps", sweeps, "per-segment orientation, e.g. \"1,-1,0\"");
  link->add_option("--random", random_count, "draw this many random cycles instead");

  auto* classify = app.add_subcommand("classify", "isometry type of a word in an amalgam");
  classify->add_option("--group", group)->required();
  classify->add_option("--word", word)->required();
  int oracle_periods = 0;
  classify->add_option("--oracle", oracle_periods, "also run the unfolding oracle over this many periods");

  auto* nf = app.add_subcommand("normal-form", "amalgam normal form and cyclic reduction");
  nf->add_option("--group", group)->required();
  nf->add_option("--word", word)->required();

  auto* certify = app.add_subcommand("certify", "brute-force certification sweeps");
  certify->require_subcommand(1);
  int dmax = 10, pmax = 4, mmax = 40, alphamax = 100, random_forms = 0;
  std::string forms_path, variant = "both";
  auto* plain = certify->add_subcommand("plain", "linear-form triples");
  plain->add_option("--dmax", dmax)->capture_default_str();
  plain->add_option("--forms", forms_path, "file with one triple per line: ℓ1; ℓ2; ℓ3");
  plain->add_option("--random-forms", random_forms, "add this many seeded random triples");
  plain->add_option("--jobs", jobs);
  auto* weighted = certify->add_subcommand("weighted", "weighted-homogeneous triples");
  weighted->add_option("--pmax", pmax)->capture_default_str();
  weighted->add_option("--mmax", mmax)->capture_default_str();
  weighted->add_option("--variant", variant)->check(CLI::IsMember({"weighted", "plus", "both"}))->capture_default_str();
  weighted->add_option("--jobs", jobs);
  auto* spade_cmd = certify->add_subcommand("spade", "the constant max ⌊(2α+1)/3⌋/α");
  spade_cmd->add_option("--alphamax", alphamax)->capture_default_str();

  int count = 100, max_faces = 30;
  auto* gb = app.add_subcommand("gb-check", "Gauss-Bonnet on a diagram or on random diagrams");
  gb->add_option("--diagram", diagram, "diagram JSON");
  gb->add_option("--window", window, "window for random diagrams");
  gb->add_option("--count", count)->capture_default_str();
  gb->add_option("--faces", max_faces)->capture_default_str();

  auto* fold = app.add_subcommand("fold", "folding locus, reducedness and vertex stars");
  fold->add_option("--diagram", diagram)->required();

  auto* plot = app.add_subcommand("plot", "SVG of an arrangement, fixed region, strip or diagram");
  std::string what;
  plot->add_option("what", what)->required()->check(CLI::IsMember({"arrangement", "fixed-region", "strip", "diagram"}));
  plot->add_option("--window", window);
  plot->add_option("--map", map_text);
  plot->add_option("--group", group);
  plot->add_option("--word", word);
  plot->add_option("--diagram", diagram);
  plot->add_option("--out", out_path)->required();

  // global flags may follow the subcommand
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](Json j, const std::string& text) {
    if (json) {
      Json full{{"schema", kSchema}};
      for (auto& [k, v] : j.items()) full[k] = v;
      out << full.dump() << "\n";
    } else {
      out << text;
    }
  };

  try {
    if (*val) {
      Weight w = Weight::parse(weight);
      Polynomial p = Polynomial::parse(poly);
      Q v = map_text.empty() ? nu(w, p) : Valuation{Automorphism::parse(map_text), w}(p);
      emit({{"value", q_str(v)}}, q_str(v) + "\n");
    } else if (*fixed) {
      auto fr = fixed_region(Automorphism::parse(map_text));
      Json rows = Json::array();
      std::string text;
      for (auto& r : fr.rows) {
        rows.push_back(row_str(r));
        text += row_str(r) + "\n";
      }
      if (fr.rows.empty()) text = "everything\n";
      emit({{"rows", rows}}, text);
    } else if (*stab) {
      Weight w = Weight::parse(weight);
      Automorphism f = Automorphism::parse(map_text);
      bool fx = is_fixed(f, w);
      auto dec = stab_decompose(f, w);
      Json j{{"fixed", fx}, {"case", stab_case(w)}};
      std::string text = std::string(fx ? "fixed" : "not fixed") + " (case " + std::to_string(stab_case(w)) + ")\n";
      if (dec) {
        j["m_part"] = dec->m_part.str();
        j["l_part"] = dec->l_part.str();
        text += "M part " + dec->m_part.str() + "\nL part " + dec->l_part.str() + "\n";
      }
      emit(j, text);
    } else if (*lines) {
      auto ls = lines_through(Weight::parse(weight), interior);
      Json arr = Json::array();
      std::string text;
      for (auto& l : ls) {
        arr.push_back({{"line", l.str()}, {"principal", l.principal()}});
        text += l.str() + (l.principal() ? "  (principal)\n" : "\n");
      }
      emit({{"count", ls.size()}, {"lines", arr}}, text + std::to_string(ls.size()) + " lines\n");
    } else if (*arrange) {
      auto a = arrangement(Window::parse(window));
      Json j{{"window", a.window.str()},
             {"lines", a.lines.size()},
             {"vertices", a.vertices.size()},
             {"line_vertices", a.line_vertex_count()},
             {"edges", a.edges.size()},
             {"line_edges", a.line_edge_count()},
             {"faces", a.faces.size()}};
      std::ostringstream t;
      t << a.window.str() << "\n"
        << a.lines.size() << " lines, " << a.vertices.size() << " vertices (" << a.line_vertex_count()
        << " on two lines), " << a.edges.size() << " edges, " << a.faces.size() << " faces\n";
      emit(j, t.str());
    } else if (*link) {
      Weight w = Weight::parse(weight);
      std::vector<LinkCycle> cycles;
      std::vector<std::string> families;
      if (random_count > 0) {
        for (int i = 0; i < random_count; ++i) {
          std::string fam;
          cycles.push_back(random_link_cycle(w, seed + static_cast<unsigned>(i), &fam));
          families.push_back(fam);
        }
      } else {
        if (chambers.empty() || junctions.empty()) throw CLI::RequiredError("--chambers and --junctions");
        std::vector<Automorphism> cs;
        for (auto& s : split(chambers, ';')) cs.push_back(Automorphism::parse(s));
        std::vector<Direction> js;
        for (auto& s : split(junctions, ';')) js.push_back(direction_at(w, s));
        std::vector<int> sw;
        if (!sweeps.empty())
          for (auto& s : split(sweeps, ',')) sw.push_back(std::stoi(s));
        cycles.push_back(build_cycle(w, cs, js, sw));
        families.push_back("");
      }
      Json arr = Json::array();
      std::ostringstream t;
      for (size_t i = 0; i < cycles.size(); ++i) {
        auto cl = classify_cycle(cycles[i]);
        Json cj = cycle_json(cycles[i], cl);
        if (!families[i].empty()) cj["family"] = families[i];
        arr.push_back(cj);
        for (auto& s : cycles[i].segments)
          t << "  " << s.chamber.str() << ": " << s.from.label << " -> " << s.to.label << "  " << s.length / kPi
            << "π\n";
        t << "total " << cycles[i].total_length / kPi << "π, " << cycle_class_name(cl.kind) << "\n";
      }
      emit(cycles.size() == 1 ? arr[0] : Json{{"cycles", arr}}, t.str());
    } else if (*classify) {
      AmalgamGroup g = parse_group(group);
      auto c = classify_isometry(g, parse_word(word));
      Json j{{"kind", isometry_kind_name(c.kind)}, {"length_expr", c.length_expr}, {"length", c.length}};
      j["limit_data"] = c.limit_data;
      std::ostringstream t;
      t << "kind=" << isometry_kind_name(c.kind) << ", length=" << c.length_expr;
      if (c.length_expr != "0") t << " ≈ " << c.length;
      t << "\n";
      if (oracle_periods > 0 && c.strip) {
        double o = unfold_length_oracle(*c.strip, oracle_periods);
        j["oracle_length"] = o;
        t << "oracle(" << oracle_periods << ") " << o << "\n";
      }
      emit(j, t.str());
    } else if (*nf) {
      AmalgamGroup g = parse_group(group);
      auto n = normal_form(g, parse_word(word));
      auto red = cyclic_reduce(n);
      Json letters = Json::array(), reduced = Json::array(), conj = Json::array();
      std::string t;
      for (size_t i = 0; i < n.letters.size(); ++i) {
        letters.push_back({{"map", n.letters[i].map.str()}, {"factor", n.tag_name(i)}});
        t += n.tag_name(i) + "  " + n.letters[i].map.str() + "\n";
      }
      for (size_t i = 0; i < red.reduced.letters.size(); ++i)
        reduced.push_back({{"map", red.reduced.letters[i].map.str()}, {"factor", red.reduced.tag_name(i)}});
      for (auto& l : red.conjugator.letters) conj.push_back(l.map.str());
      t += "cyclically reduced length " + std::to_string(red.reduced.letters.size()) + "\n";
      emit({{"group", group_name(g)},
            {"letters", letters},
            {"realized", n.realized.str()},
            {"cyclically_reduced", reduced},
            {"conjugator", conj}},
           t);
    } else if (*certify) {
      if (*plain) {
        std::vector<std::array<Polynomial, 3>> forms;
        if (!forms_path.empty()) forms = load_forms(forms_path);
        if (random_forms > 0) {
          auto r = random_form_triples(static_cast<size_t>(random_forms), seed);
          forms.insert(forms.end(), r.begin(), r.end());
        }
        if (forms.empty())
          forms.push_back({Polynomial::parse("x2"), Polynomial::parse("x2+x3"), Polynomial::parse("x3")});
        auto r = sweep_plain(dmax, forms, jobs);
        std::ostringstream t;
        t << r.instances << " instances, " << r.violations.size() << " violations, " << r.witnesses.size()
          << " sharpness witnesses, " << r.wall_time << " s\n";
        emit(report_json(r, true), t.str());
        return r.violations.empty() ? 0 : 1;
      }
      if (*weighted) {
        std::vector<std::array<Q, 2>> cs{{Q(1), Q(2)}, {Q(-1), Q(3)}, {Q(2), Q(-5)}};
        Json j;
        std::ostringstream t;
        bool clean = true;
        for (auto v : {WeightedVariant::Weighted, WeightedVariant::WeightedPlus}) {
          bool is_plain = v == WeightedVariant::Weighted;
          if ((variant == "weighted" && !is_plain) || (variant == "plus" && is_plain)) continue;
          auto r = sweep_weighted(v, pmax, mmax, cs, jobs);
          clean = clean && r.violations.empty();
          const char* name = is_plain ? "weighted" : "weightedplus";
          j[name] = report_json(r, false);
          t << name << ": " << r.instances << " instances, " << r.violations.size() << " violations, "
            << r.wall_time << " s\n";
        }
        emit(j, t.str());
        return clean ? 0 : 1;
      }
      auto s = spade(alphamax);
      emit({{"value", q_str(s.value)}, {"argmax", s.argmax}}, q_str(s.value) + " at α=" + std::to_string(s.argmax) + "\n");
    } else if (*gb) {
      std::vector<DiscDiagram> ds;
      if (!diagram.empty()) {
        ds.push_back(load_diagram(diagram));
      } else {
        if (window.empty()) throw CLI::RequiredError("--diagram or --window");
        auto a = arrangement(Window::parse(window));
        for (int i = 0; i < count; ++i) ds.push_back(random_diagram(a, max_faces, seed + static_cast<unsigned>(i)));
      }
      double worst = 0;
      Json totals = Json::array();
      for (auto& d : ds) {
        double g = gauss_bonnet(d);
        totals.push_back(g);
        worst = std::max(worst, std::fabs(g - 2 * kPi));
      }
      bool ok = worst < 1e-8;
      std::ostringstream t;
      t << ds.size() << " diagrams, max |total - 2π| = " << worst << (ok ? "" : "  FAILED") << "\n";
      emit({{"diagrams", ds.size()}, {"totals", totals}, {"max_error", worst}, {"ok", ok}}, t.str());
      return ok ? 0 : 1;
    } else if (*fold) {
      auto d = load_diagram(diagram);
      auto t = topology(d);
      auto folds = folding_locus(d, t);
      auto red = is_x_reduced(d);
      Json fj = Json::array();
      std::ostringstream txt;
      std::set<int> fold_vertices;
      for (auto& fe : folds) {
        auto& E = t.edges[fe.edge];
        Json e{{"edge", fe.edge},
               {"from", Weight(d.arr.vertices[t.vertices[E.v0].arr_vertex].alpha).str()},
               {"to", Weight(d.arr.vertices[t.vertices[E.v1].arr_vertex].alpha).str()}};
        if (fe.oriented) e["oriented_from"] = Weight(d.arr.vertices[t.vertices[(*fe.oriented)[0]].arr_vertex].alpha).str();
        fj.push_back(e);
        txt << "fold " << e["from"].get<std::string>() << " -- " << e["to"].get<std::string>()
            << (fe.oriented ? "  oriented" : "") << "\n";
        fold_vertices.insert(E.v0);
        fold_vertices.insert(E.v1);
      }
      Json stars = Json::array();
      for (int v : fold_vertices) {
        if (!t.vertices[v].interior) continue;
        Json s{{"vertex", Weight(d.arr.vertices[t.vertices[v].arr_vertex].alpha).str()}};
        try {
          auto m = star_classify(d, v);
          s["template"] = star_template_name(m.kind);
          s["marks"] = m.marks;
          s["sectors"] = m.sectors;
          s["total_angle"] = m.total_angle;
          txt << "star at " << s["vertex"].get<std::string>() << ": " << star_template_name(m.kind) << "\n";
        } catch (const Error& e) {
          if (e.code() != Errc::AngleTooLarge) throw;
          s["template"] = "angle-too-large";
          txt << "star at " << s["vertex"].get<std::string>() << ": angle too large\n";
        }
        stars.push_back(s);
      }
      txt << (red.reduced ? "reduced\n" : "not reduced across edge " + std::to_string(*red.witness) + "\n");
      Json j{{"folds", fj}, {"x_reduced", red.reduced}, {"stars", stars}};
      if (red.witness) j["witness_edge"] = *red.witness;
      emit(j, txt.str());
    } else if (*plot) {
      std::string svg;
      if (what == "arrangement") {
        if (window.empty()) throw CLI::RequiredError("--window");
        svg = svg_arrangement(arrangement(Window::parse(window)));
      } else if (what == "fixed-region") {
        if (window.empty() || map_text.empty()) throw CLI::RequiredError("--map and --window");
        svg = svg_fixed_region(Automorphism::parse(map_text), Window::parse(window));
      } else if (what == "strip") {
        if (group.empty() || word.empty()) throw CLI::RequiredError("--group and --word");
        auto c = classify_isometry(parse_group(group), parse_word(word));
        if (!c.strip) throw Error(Errc::DegenerateStrip, std::string("a ") + isometry_kind_name(c.kind) + " word has no strip");
        svg = svg_strip(*c.strip);
      } else {
        if (diagram.empty()) throw CLI::RequiredError("--diagram");
        svg = svg_diagram(load_diagram(diagram));
      }
      write_text_file(out_path, svg);
      emit({{"written", out_path}}, "wrote " + out_path + "\n");
    }
  } catch (const CLI::Error& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (json) {
      Json j{{"schema", kSchema}, {"error", errc_name(e.code())}, {"message", e.what()}};
      if (e.index >= 0) j["index"] = e.index;
      out << j.dump() << "\n";
    }
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tame3
