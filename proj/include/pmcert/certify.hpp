#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmcert/complex_cover.hpp"
#include "pmcert/develop.hpp"
#include "pmcert/graph_iso.hpp"
#include "pmcert/json_io.hpp"
#include "pmcert/lps.hpp"
#include "pmcert/polyhedron.hpp"
#include "pmcert/realize.hpp"
#include "pmcert/spectra.hpp"

namespace pmcert {

struct ConstructionParams {
  int k = 18;
  long long q = 5;
  int level = 1;
  double b_fraction = 0.9;
  double R_margin = 1.01;
  unsigned seed = 20240501;
  double tolerance = 1e-9;  // realization residual gate
  bool structural = false;  // relax the arithmetic conditions for toy runs
};

struct ParamCheck {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

// Arithmetic admissibility of (k, q): k - 1 an odd prime congruent to 1 mod 4
// and a non-square mod q, with q itself a prime congruent to 1 mod 4 so that
// the matrix generators exist. Structural mode downgrades these to warnings;
// range errors on level and the tuning knobs stay hard in both modes.
inline ParamCheck validate_params(const ConstructionParams& p) {
  ParamCheck pc;
  auto hard = [&](const std::string& m) {
    pc.errors.push_back(m);
    pc.ok = false;
  };
  auto soft = [&](const std::string& m) {
    if (p.structural)
      pc.warnings.push_back(m + " [structural mode: ignored]");
    else
      hard(m);
  };

  if (p.k < 2) hard("k must be at least 2");
  if (p.q < 2) hard("q must be at least 2");
  if (p.level < 1) hard("level must be at least 1");
  if (!(p.b_fraction > 0 && p.b_fraction < 1)) hard("b_fraction must lie in (0,1)");
  if (!(p.R_margin > 1)) hard("R_margin must exceed 1");
  if (!(p.tolerance > 0)) hard("tolerance must be positive");
  if (!pc.ok) return pc;

  long long g = p.k - 1;
  if (p.k < 18) soft("k must be at least 18 for certification");
  if (!is_prime(g)) soft(std::to_string(g) + " = k - 1 is not prime");
  if (g % 4 != 1) soft(std::to_string(g) + " = k - 1 is not congruent to 1 mod 4");
  if (!is_prime(p.q)) soft(std::to_string(p.q) + " = q is not prime");
  if (is_prime(p.q) && p.q % 4 != 1)
    soft(std::to_string(p.q) + " = q is not congruent to 1 mod 4");
  if (g == p.q) soft("k - 1 and q must be distinct");
  if (is_prime(g) && is_prime(p.q) && p.q % 2 == 1 && g != p.q &&
      is_quadratic_residue(g, p.q))
    soft(std::to_string(g) + " = k - 1 is a square mod " + std::to_string(p.q));
  return pc;
}

struct LedgerEntry {
  std::string id;
  std::string description;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
};

struct GraphStats {
  int vertices = 0;
  int edges = 0;
  int girth = 0;
  double lambda1 = 0;
  double second_adjacency = 0;
  bool constructed = false;
  std::string note;
};

struct LinkStats {
  std::string mode = "skipped";  // "full", "spot", or "skipped"
  int checked = 0;
  int isomorphic = 0;
  int sheets = 0;
  long long chi_base = 0;
  long long chi_total = 0;
  long long chi_expected = 0;
  bool covering_valid = false;
  std::string note;
};

struct CertificateReport {
  int schema = 1;
  ConstructionParams params;
  std::vector<std::string> warnings;
  bool has_constants = false;
  GeometricConstants constants;
  SigmaMargin sigma;
  GraphStats graph;
  LinkStats links;
  std::vector<LedgerEntry> ledger;
  int required_level = 0;
  double elapsed_seconds = 0;  // kept out of the canonical JSON
  std::string version = "0.1.0";
  std::string verdict;
};

// Cyclic toy voltages for structural runs: edge j of the k-banded theta graph
// carries j mod m.
inline VoltageAssignment toy_theta_voltages(int k, long long m) {
  if (m < 2 || m > 1000000) throw std::invalid_argument("toy modulus out of range");
  VoltageAssignment va;
  va.base = theta_graph(k);
  va.group = std::make_shared<CyclicGroup>(static_cast<int>(m));
  for (int j = 0; j < k; ++j) va.voltage[j] = static_cast<int>(j % m);
  return va;
}

// Voltage assignment at the requested congruence level: matrix voltages in
// certification mode, cyclic toy voltages in structural mode.
inline VoltageAssignment level_voltages(int k, long long q, int level, bool structural) {
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  long long modulus = 1;
  for (int i = 0; i < level; ++i) {
    modulus *= q;
    if (modulus > 60000)
      throw std::invalid_argument("q^level exceeds the supported modulus range");
  }
  return structural ? toy_theta_voltages(k, modulus) : lps_voltages(k - 1, modulus);
}

namespace detail {

inline Multigraph component_of(const Multigraph& g, int root) {
  std::vector<int> local(g.num_vertices(), -1);
  std::queue<int> bfs;
  Multigraph out;
  local[root] = out.add_vertex(g.vertex_name(root));
  bfs.push(root);
  while (!bfs.empty()) {
    int x = bfs.front();
    bfs.pop();
    for (const auto& inc : g.incident(x))
      if (local[inc.to] == -1) {
        local[inc.to] = out.add_vertex(g.vertex_name(inc.to));
        bfs.push(inc.to);
      }
  }
  for (const Edge& e : g.edges())
    if (local[e.u] != -1) out.add_edge(local[e.u], local[e.v], e.label);
  return out;
}

}  // namespace detail

// Builds the turnover cover of nu, cones its band elevations, and compares
// every cone-vertex link with the theta cover of the band it came from
// (bands P1 and P2 lift the voltages directly, P3 lifts their inverses).
// Also records the Euler characteristic and covering checks of the cover.
inline void run_link_check(const VoltageAssignment& nu, LinkStats& ls) {
  ComplexVoltage cv = phi_voltages(nu);
  ComplexCover cc = cover_complex(cv);
  ls.sheets = static_cast<int>(cc.sheets.size());
  ls.chi_base = euler_characteristic(cv.base);
  ls.chi_total = euler_characteristic(cc.total);
  ls.chi_expected = ls.sheets * ls.chi_base;
  ls.covering_valid = check_covering(cc.skeleton);

  const FiniteGroup& g = *nu.group;
  int k = nu.base.num_edges();
  int last_inv = g.inv(nu.voltage_of(k - 1));
  VoltageAssignment phi{theta_graph(k), nu.group, {}};
  VoltageAssignment phi_inv{theta_graph(k), nu.group, {}};
  for (int j = 0; j < k; ++j) {
    int w = g.mul(nu.voltage_of(j), last_inv);
    phi.voltage[j] = w;
    phi_inv.voltage[j] = g.inv(w);
  }
  // elevations live over the subgroup the band voltages generate, so the
  // reference is the component of the identity sheet
  std::map<std::string, Multigraph> ref;
  ref["P1"] = detail::component_of(voltage_cover(phi).total, nu.group->identity());
  ref["P2"] = ref["P1"];
  ref["P3"] = detail::component_of(voltage_cover(phi_inv).total, nu.group->identity());

  Complex2 coned = cone_off(cc.total);
  for (const auto& [apex, link] : cone_links(coned)) {
    std::string name = coned.skeleton.vertex_name(apex);  // "apex:P1@7"
    auto colon = name.find(':');
    auto at = name.find('@');
    if (colon == std::string::npos || at == std::string::npos || at <= colon)
      throw std::logic_error("unrecognized cone vertex name " + name);
    std::string band = name.substr(colon + 1, at - colon - 1);
    ++ls.checked;
    if (graphs_isomorphic(link, ref.at(band))) ++ls.isomorphic;
  }
}

// Runs the whole construction for the given parameters and scores every
// inequality of the certification chain. Sub-stage failures become failed
// ledger entries with a diagnostic, never process aborts.
inline CertificateReport certify(const ConstructionParams& p) {
  auto t0 = std::chrono::steady_clock::now();
  ParamCheck pc = validate_params(p);
  if (!pc.ok) {
    std::string msg = "invalid parameters";
    for (const std::string& e : pc.errors) msg += "; " + e;
    throw std::invalid_argument(msg);
  }

  CertificateReport rep;
  rep.params = p;
  rep.warnings = pc.warnings;

  long long modulus = 1;
  bool modulus_overflow = false;
  for (int i = 0; i < p.level; ++i) {
    modulus *= p.q;
    if (modulus > 60000) {
      modulus_overflow = true;
      break;
    }
  }

  // geometric stage
  std::string geo_error;
  if (p.structural) {
    geo_error = "structural mode";
  } else {
    try {
      MarkedPolyhedron mp = prism_combinatorics(p.k);
      RealizedPolyhedron rp = realize_polyhedron(mp.poly, p.seed, 64);
      if (rp.residual_inf > p.tolerance)
        throw std::runtime_error("realization residual exceeds the tolerance");
      rep.constants = choose_b_R(compute_constants(rp, mp.boundary_face, mp.bold_edge, p.k),
                                 p.b_fraction, p.R_margin);
      rep.sigma = sigma_margin(rp, mp.sigma_face, mp.boundary_face, rep.constants);
      rep.has_constants = true;
    } catch (const std::exception& e) {
      geo_error = e.what();
    }
  }

  // graph stage: the theta-cover at the requested level, size permitting
  VoltageAssignment nu;
  bool have_nu = false;
  {
    double est = 0;
    if (modulus_overflow) {
      rep.graph.note = "modulus exceeds the matrix group range";
    } else if (p.structural) {
      est = 2.0 * static_cast<double>(modulus);
    } else {
      double m3 = std::pow(static_cast<double>(modulus), 3);
      double qq = static_cast<double>(p.q) * p.q;
      est = m3 / qq * (qq - 1);  // 2 |PSL(2, q^level)|
    }
    if (!modulus_overflow && est > 2500) {
      std::ostringstream os;
      os << "not constructed: about " << static_cast<long long>(est)
         << " vertices exceeds the dense size guard";
      rep.graph.note = os.str();
    } else if (!modulus_overflow) {
      try {
        nu = p.structural ? toy_theta_voltages(p.k, modulus)
                          : lps_voltages(p.k - 1, modulus);
        have_nu = true;
        Multigraph lambda = voltage_cover(nu).total;
        rep.graph.vertices = lambda.num_vertices();
        rep.graph.edges = lambda.num_edges();
        rep.graph.girth = girth(lambda).value_or(0);
        rep.graph.lambda1 = lambda1(lambda);
        auto eigs = adjacency_spectrum(lambda);
        rep.graph.second_adjacency = eigs[eigs.size() - 2];
        rep.graph.constructed = true;
        if (p.structural) rep.graph.note = "structural toy graph";
        if (!voltages_generate(nu)) rep.graph.note = "voltages do not generate; cover disconnected";
      } catch (const std::exception& e) {
        rep.graph.note = std::string("not constructed: ") + e.what();
      }
    }
  }

  // link stage: full when |Q|^2 * cells(T_0) fits the guard, else a spot
  // check on a cyclic toy substitute
  {
    long long cells = 9 + 4ll * p.k;  // truncated turnover cell count
    try {
      if (have_nu && static_cast<double>(nu.group->size()) * nu.group->size() *
                             static_cast<double>(cells) <=
                         1e7) {
        run_link_check(nu, rep.links);
        rep.links.mode = "full";
      } else {
        run_link_check(toy_theta_voltages(p.k, 3), rep.links);
        rep.links.mode = "spot";
        rep.links.note = "spot check on a cyclic mod-3 substitute (size guard)";
      }
    } catch (const std::exception& e) {
      rep.links.mode = "skipped";
      rep.links.note = std::string("link check failed: ") + e.what();
    }
  }

  // ledger
  auto push = [&](const std::string& id, const std::string& desc, double lhs, double rhs,
                  bool pass) {
    rep.ledger.push_back(LedgerEntry{id, desc, lhs, rhs, pass});
  };
  auto geo = [&](const std::string& id, const std::string& desc, double lhs, double rhs,
                 bool pass) {
    if (p.structural)
      push(id, desc + " [skipped: structural mode]", 0, 0, true);
    else if (!rep.has_constants)
      push(id, desc + " [not evaluated: " + geo_error + "]", 0, 0, false);
    else
      push(id, desc, lhs, rhs, pass);
  };
  auto graphe = [&](const std::string& id, const std::string& desc, double lhs, double rhs,
                    bool pass, bool needs_constants) {
    if (p.structural)
      push(id, desc + " [skipped: structural mode]", 0, 0, true);
    else if (!rep.graph.constructed)
      push(id, desc + " [not evaluated: " + rep.graph.note + "]", 0, 0, false);
    else if (needs_constants && !rep.has_constants)
      push(id, desc + " [not evaluated: " + geo_error + "]", 0, 0, false);
    else
      push(id, desc, lhs, rhs, pass);
  };

  const GeometricConstants& gc = rep.constants;
  double sinhb = std::sinh(gc.b);
  geo("i", "buffer width below the face gap: b < mu", gc.b, gc.mu, gc.b < gc.mu);
  geo("ii", "relator scale: R > 2 pi / sinh(b)", gc.R,
      sinhb > 0 ? 2 * kPi / sinhb : 0, sinhb > 0 && gc.R > 2 * kPi / sinhb);
  geo("iii", "collar constant inside (pi/sinh(b), R/2)", gc.c, gc.R / 2,
      sinhb > 0 && gc.c > kPi / sinhb && gc.c < gc.R / 2);
  graphe("iv", "spectral gap: lambda_1 > 1/2", rep.graph.lambda1, 0.5,
         rep.graph.lambda1 > 0.5, false);
  graphe("v", "graph girth at least 6", rep.graph.girth, 6, rep.graph.girth >= 6, false);
  graphe("vi", "systole target: C * girth > R + L", gc.C * rep.graph.girth,
         gc.R + gc.L, gc.C * rep.graph.girth > gc.R + gc.L, true);
  geo("vii", "sigma face clears the buffer: distance > b", rep.sigma.distance, gc.b,
      rep.sigma.exceeds_b);
  {
    std::string desc = "every cone-vertex link matches its theta cover";
    if (rep.links.mode == "spot") desc += " [spot check]";
    if (rep.links.mode == "skipped") desc += " [" + rep.links.note + "]";
    push("viii", desc, rep.links.isomorphic, rep.links.checked,
         rep.links.checked > 0 && rep.links.isomorphic == rep.links.checked);
  }
  push("chi", "Euler characteristic is multiplicative over the cover",
       static_cast<double>(rep.links.chi_total),
       static_cast<double>(rep.links.chi_expected),
       rep.links.mode != "skipped" && rep.links.chi_total == rep.links.chi_expected);
  push("covering", "skeleton covering map is a local bijection",
       rep.links.covering_valid ? 1 : 0, 1, rep.links.covering_valid);

  if (!p.structural && rep.has_constants)
    rep.required_level = required_level(p.k - 1, p.q, gc.girth_target);

  bool all = true;
  for (const LedgerEntry& e : rep.ledger) all = all && e.pass;
  rep.verdict = all ? "pass" : "fail";
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline json params_to_json(const ConstructionParams& p) {
  return {{"k", p.k},          {"q", p.q},
          {"level", p.level},  {"b_fraction", p.b_fraction},
          {"R_margin", p.R_margin}, {"seed", p.seed},
          {"tolerance", p.tolerance}, {"structural", p.structural}};
}

inline ConstructionParams params_from_json(const json& j) {
  ConstructionParams p;
  p.k = j.at("k").get<int>();
  p.q = j.at("q").get<long long>();
  p.level = j.at("level").get<int>();
  p.b_fraction = j.at("b_fraction").get<double>();
  p.R_margin = j.at("R_margin").get<double>();
  p.seed = j.at("seed").get<unsigned>();
  p.tolerance = j.at("tolerance").get<double>();
  p.structural = j.at("structural").get<bool>();
  return p;
}

inline json graph_stats_to_json(const GraphStats& g) {
  return {{"vertices", g.vertices},
          {"edges", g.edges},
          {"girth", g.girth},
          {"lambda1", g.lambda1},
          {"second_adjacency", g.second_adjacency},
          {"constructed", g.constructed},
          {"note", g.note}};
}

inline json link_stats_to_json(const LinkStats& l) {
  return {{"mode", l.mode},
          {"checked", l.checked},
          {"isomorphic", l.isomorphic},
          {"sheets", l.sheets},
          {"chi_base", l.chi_base},
          {"chi_total", l.chi_total},
          {"chi_expected", l.chi_expected},
          {"covering_valid", l.covering_valid},
          {"note", l.note}};
}

// Canonical certificate serialization (schema 1). Alphabetical key order and
// no timing field, so equal reports give bit-identical dumps.
inline json certificate_to_json(const CertificateReport& r) {
  json ledger = json::array();
  for (const LedgerEntry& e : r.ledger)
    ledger.push_back({{"id", e.id},
                      {"description", e.description},
                      {"lhs", e.lhs},
                      {"rhs", e.rhs},
                      {"pass", e.pass}});
  json graph = graph_stats_to_json(r.graph);
  json links = link_stats_to_json(r.links);
  return {{"schema", r.schema},
          {"params", params_to_json(r.params)},
          {"warnings", r.warnings},
          {"constants", r.has_constants ? constants_to_json(r.constants) : json()},
          {"sigma", r.has_constants ? sigma_to_json(r.sigma) : json()},
          {"graph", graph},
          {"links", links},
          {"ledger", ledger},
          {"required_level", r.required_level},
          {"version", r.version},
          {"verdict", r.verdict}};
}

inline CertificateReport certificate_from_json(const json& j) {
  CertificateReport r;
  r.schema = j.at("schema").get<int>();
  r.params = params_from_json(j.at("params"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.has_constants = !j.at("constants").is_null();
  if (r.has_constants) {
    r.constants = constants_from_json(j.at("constants"));
    r.sigma = sigma_from_json(j.at("sigma"));
  }
  const json& g = j.at("graph");
  r.graph.vertices = g.at("vertices").get<int>();
  r.graph.edges = g.at("edges").get<int>();
  r.graph.girth = g.at("girth").get<int>();
  r.graph.lambda1 = g.at("lambda1").get<double>();
  r.graph.second_adjacency = g.at("second_adjacency").get<double>();
  r.graph.constructed = g.at("constructed").get<bool>();
  r.graph.note = g.at("note").get<std::string>();
  const json& l = j.at("links");
  r.links.mode = l.at("mode").get<std::string>();
  r.links.checked = l.at("checked").get<int>();
  r.links.isomorphic = l.at("isomorphic").get<int>();
  r.links.sheets = l.at("sheets").get<int>();
  r.links.chi_base = l.at("chi_base").get<long long>();
  r.links.chi_total = l.at("chi_total").get<long long>();
  r.links.chi_expected = l.at("chi_expected").get<long long>();
  r.links.covering_valid = l.at("covering_valid").get<bool>();
  r.links.note = l.at("note").get<std::string>();
  for (const json& ej : j.at("ledger"))
    r.ledger.push_back(LedgerEntry{ej.at("id").get<std::string>(),
                                   ej.at("description").get<std::string>(),
                                   ej.at("lhs").get<double>(),
                                   ej.at("rhs").get<double>(),
                                   ej.at("pass").get<bool>()});
  r.required_level = j.at("required_level").get<int>();
  r.version = j.at("version").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  return r;
}

// Independent checker: re-evaluates every ledger formula from the raw
// serialized fields and cross-checks the verdict, the derived constants and
// the required-level estimate. Returns one message per inconsistency.
inline std::vector<std::string> verify_certificate(const json& j) {
  std::vector<std::string> problems;
  auto flag = [&](const std::string& m) { problems.push_back(m); };
  auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  if (j.at("schema").get<int>() != 1) flag("unknown schema version");

  bool structural = j.at("params").at("structural").get<bool>();
  bool has_constants = !j.at("constants").is_null();
  double C = 0, L = 0, mu = 0, D = 0, b = 0, R = 0, c = 0, A = 0;
  int girth_target = 0;
  if (has_constants) {
    const json& gc = j.at("constants");
    C = gc.at("C").get<double>();
    L = gc.at("L").get<double>();
    mu = gc.at("mu").get<double>();
    D = gc.at("D").get<double>();
    b = gc.at("b").get<double>();
    R = gc.at("R").get<double>();
    c = gc.at("c").get<double>();
    A = gc.at("A_threshold").get<double>();
    girth_target = gc.at("girth_target").get<int>();
    double bf = gc.at("b_fraction").get<double>();
    double rm = gc.at("R_margin").get<double>();
    if (!near(b, bf * mu)) flag("b does not equal b_fraction * mu");
    if (!near(R, rm * 2 * kPi / std::sinh(b))) flag("R does not match its margin formula");
    if (!near(c, 0.5 * (kPi / std::sinh(b) + R / 2))) flag("c is not centered in its window");
    if (girth_target != std::max(6, static_cast<int>(std::ceil((R + L) / C))))
      flag("girth_target does not match ceil((R + L) / C)");
    if (!near(A, 3 * R / D + 3)) flag("A_threshold does not match 3 R / D + 3");
  }
  const json& g = j.at("graph");
  const json& l = j.at("links");
  bool constructed = g.at("constructed").get<bool>();

  for (const json& ej : j.at("ledger")) {
    std::string id = ej.at("id").get<std::string>();
    bool pass = ej.at("pass").get<bool>();
    double lhs = ej.at("lhs").get<double>();
    double rhs = ej.at("rhs").get<double>();
    bool skipped = ej.at("description").get<std::string>().find("[skipped") !=
                   std::string::npos;
    auto expect = [&](bool want, double want_lhs, double want_rhs) {
      if (pass != want) flag("ledger entry " + id + " pass flag is inconsistent");
      if (!(near(lhs, want_lhs) && near(rhs, want_rhs)))
        flag("ledger entry " + id + " operands are inconsistent");
    };
    if (skipped) {
      if (!structural) flag("entry " + id + " skipped outside structural mode");
      if (!pass) flag("skipped entry " + id + " must carry pass");
      continue;
    }
    if (id == "i") {
      if (has_constants)
        expect(b < mu, b, mu);
      else if (pass)
        flag("entry i passes without constants");
    } else if (id == "ii") {
      if (has_constants)
        expect(R > 2 * kPi / std::sinh(b), R, 2 * kPi / std::sinh(b));
      else if (pass)
        flag("entry ii passes without constants");
    } else if (id == "iii") {
      if (has_constants)
        expect(c > kPi / std::sinh(b) && c < R / 2, c, R / 2);
      else if (pass)
        flag("entry iii passes without constants");
    } else if (id == "iv") {
      if (constructed)
        expect(g.at("lambda1").get<double>() > 0.5, g.at("lambda1").get<double>(), 0.5);
      else if (pass)
        flag("entry iv passes without a graph");
    } else if (id == "v") {
      if (constructed)
        expect(g.at("girth").get<int>() >= 6, g.at("girth").get<int>(), 6);
      else if (pass)
        flag("entry v passes without a graph");
    } else if (id == "vi") {
      if (constructed && has_constants)
        expect(C * g.at("girth").get<int>() > R + L, C * g.at("girth").get<int>(), R + L);
      else if (pass)
        flag("entry vi passes without its inputs");
    } else if (id == "vii") {
      if (has_constants) {
        double d = j.at("sigma").at("distance").get<double>();
        expect(d > b, d, b);
      } else if (pass) {
        flag("entry vii passes without constants");
      }
    } else if (id == "viii") {
      int checked = l.at("checked").get<int>();
      int iso = l.at("isomorphic").get<int>();
      expect(checked > 0 && iso == checked, iso, checked);
    } else if (id == "chi") {
      long long t = l.at("chi_total").get<long long>();
      long long e = l.at("chi_expected").get<long long>();
      expect(l.at("mode").get<std::string>() != "skipped" && t == e,
             static_cast<double>(t), static_cast<double>(e));
      if (e != l.at("sheets").get<long long>() * l.at("chi_base").get<long long>())
        flag("chi_expected does not equal sheets * chi_base");
    } else if (id == "covering") {
      bool v = l.at("covering_valid").get<bool>();
      expect(v, v ? 1 : 0, 1);
    } else {
      flag("unknown ledger entry " + id);
    }
  }

  bool all = true;
  for (const json& ej : j.at("ledger")) all = all && ej.at("pass").get<bool>();
  if ((j.at("verdict").get<std::string>() == "pass") != all)
    flag("verdict does not reflect the ledger");
  if (!structural && has_constants) {
    int want = required_level(j.at("params").at("k").get<int>() - 1,
                              j.at("params").at("q").get<long long>(), girth_target);
    if (j.at("required_level").get<int>() != want)
      flag("required_level does not match the girth bound");
  }
  return problems;
}

inline std::string emit_report(const CertificateReport& r, const std::string& format) {
  if (format == "json") return certificate_to_json(r).dump(2) + "\n";
  if (format != "text") throw std::invalid_argument("format must be json or text");
  std::ostringstream os;
  os << "certificate " << r.version << " (schema " << r.schema << ")\n";
  os << "params: k=" << r.params.k << " q=" << r.params.q << " level=" << r.params.level
     << " b_fraction=" << r.params.b_fraction << " R_margin=" << r.params.R_margin
     << " seed=" << r.params.seed << (r.params.structural ? " structural" : "") << "\n";
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  if (r.has_constants) {
    const GeometricConstants& gc = r.constants;
    os << "constants: C=" << gc.C << " L=" << gc.L << " mu=" << gc.mu << " D=" << gc.D
       << " b=" << gc.b << " R=" << gc.R << " c=" << gc.c
       << " girth_target=" << gc.girth_target << " A_threshold=" << gc.A_threshold << "\n";
    os << "sigma: distance=" << r.sigma.distance << "\n";
  }
  os << "graph: vertices=" << r.graph.vertices << " edges=" << r.graph.edges
     << " girth=" << r.graph.girth << " lambda1=" << r.graph.lambda1
     << " second_adjacency=" << r.graph.second_adjacency;
  if (!r.graph.note.empty()) os << " (" << r.graph.note << ")";
  os << "\n";
  os << "links: mode=" << r.links.mode << " isomorphic=" << r.links.isomorphic << "/"
     << r.links.checked << " sheets=" << r.links.sheets << " chi=" << r.links.chi_total
     << " expected=" << r.links.chi_expected << "\n";
  for (const LedgerEntry& e : r.ledger)
    os << "[" << e.id << "] " << (e.pass ? "PASS" : "FAIL") << " " << e.description
       << " (lhs=" << e.lhs << ", rhs=" << e.rhs << ")\n";
  if (r.required_level > 0) os << "required_level: " << r.required_level << "\n";
  os << "elapsed: " << r.elapsed_seconds << " s\n";
  os << "verdict: " << r.verdict << "\n";
  return os.str();
}

inline int exit_code(const CertificateReport& r) { return r.verdict == "pass" ? 0 : 1; }

}  // namespace pmcert
