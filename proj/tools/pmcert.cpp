// Command line front end: builds the marked prism, its hyperbolic constants,
// the congruence covers of the banded theta graph, and the certification
// ledger tying them together. Exit codes: 0 success / certificate passes,
// 1 operational failure / certificate fails, 2 invalid input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmcert/certify.hpp"
#include "pmcert/coxeter.hpp"
#include "pmcert/graph.hpp"
#include "pmcert/tits.hpp"

using namespace pmcert;

namespace {

struct Options {
  ConstructionParams params;
  std::string format = "json";
  std::string out;
  std::string config;
  int gens = 2;
  std::vector<std::string> pairs;
  std::string word;
  std::vector<std::string> words;
  int radius = 2;
  long long max_modulus = 10000;
  long long ball_guard = 1000000;
};

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open output file " + o.out);
    f << text;
  }
}

void emit(const Options& o, const json& j, const std::string& text_form) {
  if (o.format == "text")
    write_output(o, text_form);
  else
    write_output(o, j.dump(2) + "\n");
}

CoxWord parse_word(const std::string& s) {
  CoxWord w;
  std::istringstream is(s);
  int x;
  while (is >> x) w.push_back(x);
  if (!is.eof() && !is.fail())
    throw std::invalid_argument("words are space-separated generator indices");
  return w;
}

RACG racg_from_options(const Options& o) {
  std::vector<std::pair<int, int>> pairs;
  for (const std::string& s : o.pairs) {
    auto dash = s.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("commuting pairs look like i-j");
    pairs.push_back({std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))});
  }
  return RACG(o.gens, pairs);
}

// A --config file is a JSON object with the same keys as the long flags; it
// is applied before parsing, so explicit flags win.
void apply_config(int argc, char** argv, Options& o) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0)
      path = a.substr(9);
  }
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file " + path);
  json j = json::parse(f);
  if (j.contains("k")) o.params.k = j.at("k").get<int>();
  if (j.contains("q")) o.params.q = j.at("q").get<long long>();
  if (j.contains("level")) o.params.level = j.at("level").get<int>();
  if (j.contains("b_fraction")) o.params.b_fraction = j.at("b_fraction").get<double>();
  if (j.contains("R_margin")) o.params.R_margin = j.at("R_margin").get<double>();
  if (j.contains("seed")) o.params.seed = j.at("seed").get<unsigned>();
  if (j.contains("tolerance")) o.params.tolerance = j.at("tolerance").get<double>();
  if (j.contains("structural")) o.params.structural = j.at("structural").get<bool>();
  if (j.contains("format")) o.format = j.at("format").get<std::string>();
  if (j.contains("out")) o.out = j.at("out").get<std::string>();
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--k", o.params.k, "number of bands (faces are k-gons of the turnover)");
  sub->add_option("--q", o.params.q, "congruence prime");
  sub->add_option("--level", o.params.level, "congruence level n; the modulus is q^n");
  sub->add_option("--b-fraction", o.params.b_fraction, "buffer width as a fraction of mu");
  sub->add_option("--r-margin", o.params.R_margin, "relator scale margin above 2 pi / sinh b");
  sub->add_option("--seed", o.params.seed, "seed for the realization restarts");
  sub->add_option("--tolerance", o.params.tolerance, "realization residual gate");
  sub->add_flag("--structural", o.params.structural,
                "toy mode: cyclic voltages, geometric checks skipped");
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--format", o.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--config", o.config, "JSON file with flag defaults (applied first)");
}

int run_prism(const Options& o) {
  MarkedPolyhedron mp = prism_combinatorics(o.params.k);
  std::ostringstream os;
  os << "faces:";
  for (const std::string& f : mp.poly.face_names()) os << " " << f;
  os << "\nboundary_face=" << mp.boundary_face << " sigma_face=" << mp.sigma_face
     << " bold_edge=" << mp.bold_edge << "\n";
  for (int e = 0; e < mp.poly.num_edges(); ++e) {
    const PolyEdge& pe = mp.poly.edges()[e];
    os << "edge " << e << ": " << mp.poly.face_names()[pe.f1] << " ~ "
       << mp.poly.face_names()[pe.f2] << " angle pi/" << pe.angle_sub << "\n";
  }
  emit(o, marked_polyhedron_to_json(mp), os.str());
  return 0;
}

int run_constants(const Options& o) {
  MarkedPolyhedron mp = prism_combinatorics(o.params.k);
  RealizedPolyhedron rp = realize_polyhedron(mp.poly, o.params.seed, 64);
  if (rp.residual_inf > o.params.tolerance)
    throw std::runtime_error("realization residual exceeds the tolerance");
  RealizationReport rep = validate_realization(rp);
  GeometricConstants gc =
      choose_b_R(compute_constants(rp, mp.boundary_face, mp.bold_edge, o.params.k),
                 o.params.b_fraction, o.params.R_margin);
  SigmaMargin sm = sigma_margin(rp, mp.sigma_face, mp.boundary_face, gc);
  json j = {{"constants", constants_to_json(gc)},
            {"sigma", sigma_to_json(sm)},
            {"realization", realization_to_json(rp, rep)}};
  std::ostringstream os;
  os << "C=" << gc.C << " L=" << gc.L << " mu=" << gc.mu << " D=" << gc.D << "\n"
     << "b=" << gc.b << " R=" << gc.R << " c=" << gc.c
     << " girth_target=" << gc.girth_target << " A_threshold=" << gc.A_threshold << "\n"
     << "sigma_distance=" << sm.distance << " exceeds_b=" << (sm.exceeds_b ? 1 : 0)
     << "\n"
     << "residual=" << rp.residual_inf << " restarts=" << rp.restarts_used << "\n";
  emit(o, j, os.str());
  return 0;
}

int run_lps(const Options& o) {
  VoltageAssignment va =
      level_voltages(o.params.k, o.params.q, o.params.level, o.params.structural);
  long long modulus = 1;
  for (int i = 0; i < o.params.level; ++i) modulus *= o.params.q;
  json volts = json::array();
  for (int j = 0; j < va.base.num_edges(); ++j) volts.push_back(va.voltage_of(j));
  json j = {{"p", o.params.k - 1},
            {"q", o.params.q},
            {"level", o.params.level},
            {"modulus", modulus},
            {"group", va.group->kind()},
            {"group_size", va.group->size()},
            {"target", o.params.structural
                           ? "cyclic"
                           : lps_cayley_target(o.params.k - 1, o.params.q)},
            {"generates", voltages_generate(va)},
            {"voltages", volts},
            {"base", graph_to_json(va.base)}};
  std::ostringstream os;
  os << "group " << va.group->kind() << " of size " << va.group->size() << ", "
     << va.base.num_edges() << " voltages, generates="
     << (voltages_generate(va) ? 1 : 0) << "\n";
  emit(o, j, os.str());
  return 0;
}

int run_girth(const Options& o) {
  VoltageAssignment va =
      level_voltages(o.params.k, o.params.q, o.params.level, o.params.structural);
  Multigraph lambda = voltage_cover(va).total;
  auto g = girth(lambda);
  json j = {{"vertices", lambda.num_vertices()},
            {"edges", lambda.num_edges()},
            {"girth", g ? json(*g) : json()}};
  std::ostringstream os;
  os << "vertices=" << lambda.num_vertices() << " edges=" << lambda.num_edges()
     << " girth=" << (g ? std::to_string(*g) : "none") << "\n";
  emit(o, j, os.str());
  return 0;
}

int run_spectrum(const Options& o) {
  VoltageAssignment va =
      level_voltages(o.params.k, o.params.q, o.params.level, o.params.structural);
  Multigraph lambda = voltage_cover(va).total;
  double l1 = lambda1(lambda);
  auto eigs = adjacency_spectrum(lambda);
  double second = eigs[eigs.size() - 2];
  json j = {{"vertices", lambda.num_vertices()},
            {"lambda1", l1},
            {"second_adjacency", second},
            {"gap_above_half", l1 > 0.5}};
  std::ostringstream os;
  os << "vertices=" << lambda.num_vertices() << " lambda1=" << l1
     << " second_adjacency=" << second << " gap_above_half=" << (l1 > 0.5 ? 1 : 0)
     << "\n";
  emit(o, j, os.str());
  return 0;
}

int run_cover(const Options& o) {
  VoltageAssignment va =
      level_voltages(o.params.k, o.params.q, o.params.level, o.params.structural);
  ComplexVoltage cv = phi_voltages(va);
  ComplexCover cc = cover_complex(cv);
  std::map<std::string, int> bands;
  for (const auto& [label, edges] : cc.total.boundaries)
    ++bands[label.substr(0, label.find('@'))];
  json j = {{"sheets", cc.sheets.size()},
            {"base",
             {{"vertices", cv.base.skeleton.num_vertices()},
              {"edges", cv.base.skeleton.num_edges()},
              {"faces", cv.base.faces.size()},
              {"chi", euler_characteristic(cv.base)}}},
            {"total",
             {{"vertices", cc.total.skeleton.num_vertices()},
              {"edges", cc.total.skeleton.num_edges()},
              {"faces", cc.total.faces.size()},
              {"chi", euler_characteristic(cc.total)}}},
            {"covering_valid", check_covering(cc.skeleton)},
            {"elevations", bands}};
  std::ostringstream os;
  os << "sheets=" << cc.sheets.size() << " chi_base=" << euler_characteristic(cv.base)
     << " chi_total=" << euler_characteristic(cc.total)
     << " covering_valid=" << (check_covering(cc.skeleton) ? 1 : 0) << "\n";
  for (const auto& [band, n] : bands) os << "band " << band << ": " << n << " elevations\n";
  emit(o, j, os.str());
  return 0;
}

int run_cone_links(const Options& o) {
  VoltageAssignment va =
      level_voltages(o.params.k, o.params.q, o.params.level, o.params.structural);
  LinkStats ls;
  run_link_check(va, ls);
  ls.mode = "full";
  std::ostringstream os;
  os << "checked=" << ls.checked << " isomorphic=" << ls.isomorphic
     << " sheets=" << ls.sheets << " chi_total=" << ls.chi_total
     << " chi_expected=" << ls.chi_expected
     << " covering_valid=" << (ls.covering_valid ? 1 : 0) << "\n";
  emit(o, link_stats_to_json(ls), os.str());
  return ls.checked > 0 && ls.isomorphic == ls.checked ? 0 : 1;
}

int run_racg_reduce(const Options& o) {
  RACG g = racg_from_options(o);
  CoxWord w = parse_word(o.word);
  g.check_word(w);
  CoxWord red = reduce(g, w);
  CoxWord nf = normal_form(g, w);
  json j = {{"word", w},
            {"reduced", red},
            {"normal_form", nf},
            {"input_was_reduced", is_reduced(g, w)},
            {"trivial", nf.empty()}};
  std::ostringstream os;
  os << "length " << w.size() << " -> " << red.size() << ", normal form:";
  for (int t : nf) os << " " << t;
  os << (nf.empty() ? " (identity)" : "") << "\n";
  emit(o, j, os.str());
  return 0;
}

int run_racg_ball(const Options& o) {
  RACG g = racg_from_options(o);
  auto b = ball(g, o.radius, o.ball_guard);
  json words = json::array();
  for (const CoxWord& w : b) words.push_back(w);
  json j = {{"radius", o.radius}, {"size", b.size()}, {"words", words}};
  std::ostringstream os;
  os << "ball of radius " << o.radius << " has " << b.size() << " elements\n";
  emit(o, j, os.str());
  return 0;
}

int run_racg_modulus(const Options& o) {
  RACG g = racg_from_options(o);
  std::vector<CoxWord> elems;
  for (const std::string& s : o.words) {
    CoxWord w = parse_word(s);
    g.check_word(w);
    elems.push_back(w);
  }
  if (elems.empty()) throw std::invalid_argument("give at least one --word");
  SeparationRecord rec = separating_modulus(g, elems, o.max_modulus);
  std::ostringstream os;
  os << "modulus=" << rec.modulus << " witnesses=" << rec.witnesses.size() << "\n";
  emit(o, separation_to_json(rec), os.str());
  return 0;
}

int run_certify(const Options& o) {
  CertificateReport rep = certify(o.params);
  auto problems = verify_certificate(certificate_to_json(rep));
  if (!problems.empty()) {
    for (const std::string& p : problems) std::cerr << "checker: " << p << "\n";
    throw std::runtime_error("emitted certificate failed its own checker pass");
  }
  write_output(o, emit_report(rep, o.format));
  return exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    apply_config(argc, argv, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"prism geometry, congruence covers and certification ledger "
               "for banded turnover complexes"};
  app.require_subcommand(1);

  CLI::App* prism = app.add_subcommand("prism", "marked prism combinatorics");
  CLI::App* constants = app.add_subcommand("constants", "realize the prism and derive its constants");
  CLI::App* lps = app.add_subcommand("lps", "voltage assignment at the requested level");
  CLI::App* girth_cmd = app.add_subcommand("girth", "girth of the theta cover");
  CLI::App* spectrum = app.add_subcommand("spectrum", "spectral gap of the theta cover");
  CLI::App* cover = app.add_subcommand("cover", "lifted turnover complex statistics");
  CLI::App* cone_links = app.add_subcommand("cone-links", "compare cone-vertex links with theta covers");
  CLI::App* racg = app.add_subcommand("racg", "right-angled Coxeter group utilities");
  CLI::App* certify_cmd = app.add_subcommand("certify", "run the whole construction and score the ledger");
  for (CLI::App* sub : {prism, constants, lps, girth_cmd, spectrum, cover, cone_links, certify_cmd})
    add_common(sub, o);

  racg->require_subcommand(1);
  CLI::App* reduce_cmd = racg->add_subcommand("reduce", "reduce a word and print its normal form");
  CLI::App* ball_cmd = racg->add_subcommand("ball", "list group elements up to a radius");
  CLI::App* modulus_cmd = racg->add_subcommand("modulus", "smallest modulus separating elements from 1");
  for (CLI::App* sub : {reduce_cmd, ball_cmd, modulus_cmd}) {
    sub->add_option("--gens", o.gens, "number of generators")->required();
    sub->add_option("--pairs", o.pairs, "commuting pairs i-j");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--config", o.config, "JSON file with flag defaults (applied first)");
  }
  reduce_cmd->add_option("--word", o.word, "space-separated generator indices")->required();
  ball_cmd->add_option("--radius", o.radius, "ball radius");
  ball_cmd->add_option("--guard", o.ball_guard, "element count guard");
  modulus_cmd->add_option("--word", o.words, "element to separate (repeatable)");
  modulus_cmd->add_option("--max-modulus", o.max_modulus, "search bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    if (prism->parsed()) return run_prism(o);
    if (constants->parsed()) return run_constants(o);
    if (lps->parsed()) return run_lps(o);
    if (girth_cmd->parsed()) return run_girth(o);
    if (spectrum->parsed()) return run_spectrum(o);
    if (cover->parsed()) return run_cover(o);
    if (cone_links->parsed()) return run_cone_links(o);
    if (racg->parsed()) {
      if (reduce_cmd->parsed()) return run_racg_reduce(o);
      if (ball_cmd->parsed()) return run_racg_ball(o);
      if (modulus_cmd->parsed()) return run_racg_modulus(o);
    }
    if (certify_cmd->parsed()) return run_certify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
