#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>

#include "pmcert/certify.hpp"
#include "pmcert/complex2.hpp"
#include "pmcert/tits.hpp"

using namespace pmcert;

namespace {

const CertificateReport& level1_report() {
  static CertificateReport rep = certify(ConstructionParams{});
  return rep;
}

const LedgerEntry& entry(const CertificateReport& r, const std::string& id) {
  for (const LedgerEntry& e : r.ledger)
    if (e.id == id) return e;
  FAIL("missing ledger entry " + id);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parameter validation separates hard errors from arithmetic ones") {
  ConstructionParams good;
  CHECK(validate_params(good).ok);
  CHECK(validate_params(good).warnings.empty());

  ConstructionParams bad = good;
  bad.k = 15;  // 14 is not prime
  CHECK_FALSE(validate_params(bad).ok);

  ConstructionParams toy;
  toy.k = 6;
  toy.q = 3;
  toy.structural = true;
  ParamCheck pc = validate_params(toy);
  CHECK(pc.ok);
  CHECK_FALSE(pc.warnings.empty());

  // range errors stay hard even in structural mode
  for (auto mutate : {+[](ConstructionParams& p) { p.level = 0; },
                      +[](ConstructionParams& p) { p.b_fraction = 1.0; },
                      +[](ConstructionParams& p) { p.R_margin = 1.0; },
                      +[](ConstructionParams& p) { p.tolerance = 0.0; },
                      +[](ConstructionParams& p) { p.k = 1; }}) {
    ConstructionParams p = toy;
    mutate(p);
    CHECK_FALSE(validate_params(p).ok);
    CHECK_THROWS_AS(certify(p), std::invalid_argument);
  }

  // residue condition: 13 = k - 1 is a square mod 17
  ConstructionParams sq;
  sq.k = 14;
  sq.q = 17;
  CHECK_FALSE(validate_params(sq).ok);
}

TEST_CASE("the level estimate matches the girth growth bound") {
  CHECK(required_level(17, 5, 74) == 33);
  CHECK(required_level(17, 5, 6) == 3);
  CHECK(required_level(17, 5, 0) == 1);
}

TEST_CASE("level voltages switch between matrix and cyclic groups") {
  VoltageAssignment cert = level_voltages(18, 5, 1, false);
  CHECK(cert.group->size() == 60);
  CHECK(cert.base.num_edges() == 18);
  CHECK(voltages_generate(cert));

  VoltageAssignment toy = level_voltages(6, 3, 2, true);
  CHECK(toy.group->size() == 9);
  CHECK(toy.base.num_edges() == 6);
  CHECK(toy.voltage_of(4) == 4);
  CHECK(toy.voltage_of(5) == 5);

  VoltageAssignment wrap = level_voltages(6, 3, 1, true);
  CHECK(wrap.group->size() == 3);
  CHECK(wrap.voltage_of(4) == 1);

  CHECK_THROWS_AS(level_voltages(18, 5, 10, false), std::invalid_argument);
  CHECK_THROWS_AS(level_voltages(18, 5, 0, false), std::invalid_argument);
}

TEST_CASE("a structural toy run certifies its combinatorics and skips geometry") {
  ConstructionParams p;
  p.k = 6;
  p.q = 3;
  p.structural = true;
  CertificateReport r = certify(p);

  CHECK(r.verdict == "pass");
  CHECK(exit_code(r) == 0);
  CHECK_FALSE(r.has_constants);
  CHECK(r.required_level == 0);
  CHECK_FALSE(r.warnings.empty());

  for (const std::string& id : {"i", "ii", "iii", "iv", "v", "vi", "vii"}) {
    const LedgerEntry& e = entry(r, id);
    CHECK(e.pass);
    CHECK(e.description.find("[skipped: structural mode]") != std::string::npos);
  }
  CHECK(entry(r, "viii").lhs == 9);
  CHECK(entry(r, "viii").rhs == 9);
  CHECK(entry(r, "viii").pass);
  CHECK(entry(r, "chi").pass);
  CHECK(entry(r, "covering").pass);
  CHECK(r.links.mode == "full");
  CHECK(r.links.sheets == 9);
  CHECK(r.links.chi_base == -9);
  CHECK(r.links.chi_total == -81);
  CHECK(r.links.chi_total == r.links.sheets * r.links.chi_base);

  CHECK(verify_certificate(certificate_to_json(r)).empty());
  json j = certificate_to_json(r);
  CHECK(j.at("constants").is_null());
  CHECK(j.at("sigma").is_null());
}

TEST_CASE("the level one certificate fails exactly the girth entries") {
  const CertificateReport& r = level1_report();

  CHECK(r.verdict == "fail");
  CHECK(exit_code(r) == 1);
  std::set<std::string> failed;
  for (const LedgerEntry& e : r.ledger)
    if (!e.pass) failed.insert(e.id);
  CHECK(failed == std::set<std::string>{"v", "vi"});
  CHECK(r.required_level == 33);

  CHECK(r.has_constants);
  CHECK(r.constants.C == Catch::Approx(1.4133).epsilon(1e-3));
  CHECK(r.constants.L == Catch::Approx(2.3619).epsilon(1e-3));
  CHECK(r.constants.mu == Catch::Approx(0.069503).margin(1e-4));
  CHECK(r.constants.girth_target == 74);

  CHECK(r.graph.constructed);
  CHECK(r.graph.vertices == 120);
  CHECK(r.graph.edges == 1080);
  CHECK(r.graph.girth == 4);
  CHECK(r.graph.lambda1 == Catch::Approx(2.0 / 3.0).margin(1e-12));
  CHECK(r.graph.second_adjacency == Catch::Approx(6.0).margin(1e-9));

  CHECK(r.links.mode == "full");
  CHECK(r.links.checked == 180);
  CHECK(r.links.isomorphic == 180);
  CHECK(r.links.sheets == 3600);
  CHECK(r.links.chi_total == 3600ll * -33);
  CHECK(r.links.covering_valid);

  CHECK(verify_certificate(certificate_to_json(r)).empty());
}

TEST_CASE("certificates round trip through json and emit stable reports") {
  const CertificateReport& r = level1_report();
  json j = certificate_to_json(r);
  CHECK(certificate_to_json(certificate_from_json(j)) == j);

  // same seed, bit-identical canonical serialization
  CertificateReport again = certify(ConstructionParams{});
  CHECK(emit_report(again, "json") == emit_report(r, "json"));

  std::string text = emit_report(r, "text");
  for (const LedgerEntry& e : r.ledger) {
    std::string line = "[" + e.id + "] " + (e.pass ? "PASS" : "FAIL");
    CHECK(text.find(line) != std::string::npos);
  }
  CHECK(text.find("verdict: fail") != std::string::npos);
  CHECK(text.find("required_level: 33") != std::string::npos);

  // one line per ledger entry plus the header and summary lines
  int lines = 0;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] == '[') ++lines;
  CHECK(lines == static_cast<int>(r.ledger.size()));

  CHECK_THROWS_AS(emit_report(r, "yaml"), std::invalid_argument);
}

TEST_CASE("the checker rejects tampered certificates") {
  json j = certificate_to_json(level1_report());
  CHECK(verify_certificate(j).empty());

  SECTION("forged buffer width") {
    j["constants"]["b"] = 0.2;  // now above mu, so entry i must fail
    auto problems = verify_certificate(j);
    REQUIRE_FALSE(problems.empty());
    bool found = false;
    for (const std::string& p : problems)
      if (p.find("entry i ") != std::string::npos) found = true;
    CHECK(found);
  }
  SECTION("forged ledger flag") {
    for (json& e : j["ledger"])
      if (e["id"] == "v") e["pass"] = true;
    auto problems = verify_certificate(j);
    CHECK_FALSE(problems.empty());
  }
  SECTION("forged verdict") {
    j["verdict"] = "pass";
    auto problems = verify_certificate(j);
    CHECK_FALSE(problems.empty());
  }
  SECTION("forged isomorphism count") {
    j["links"]["isomorphic"] = 120;
    auto problems = verify_certificate(j);
    CHECK_FALSE(problems.empty());
  }
  SECTION("forged required level") {
    j["required_level"] = 2;
    auto problems = verify_certificate(j);
    CHECK_FALSE(problems.empty());
  }
}

TEST_CASE("batched cone links agree with the single vertex builder") {
  VoltageAssignment va = toy_theta_voltages(5, 4);
  ComplexCover cc = cover_complex(phi_voltages(va));
  Complex2 coned = cone_off(cc.total);
  auto links = cone_links(coned);
  CHECK(links.size() == coned.cone_vertices.size());
  for (const auto& [v, link] : links) {
    Multigraph single = vertex_link(coned, v);
    REQUIRE(link.num_vertices() == single.num_vertices());
    REQUIRE(link.num_edges() == single.num_edges());
    for (int i = 0; i < link.num_vertices(); ++i)
      CHECK(link.vertex_name(i) == single.vertex_name(i));
    CHECK(graphs_isomorphic(link, single));
  }
}

TEST_CASE("serializers round trip the supporting structures") {
  Multigraph g = theta_graph(4);
  Multigraph g2 = graph_from_json(graph_to_json(g));
  CHECK(g2.num_vertices() == g.num_vertices());
  CHECK(g2.num_edges() == g.num_edges());
  CHECK(g2.vertex_name(0) == g.vertex_name(0));
  CHECK(graph_to_json(g2) == graph_to_json(g));

  RACG r(4, {{0, 1}, {2, 3}});
  RACG r2 = racg_from_json(racg_to_json(r));
  CHECK(racg_to_json(r2) == racg_to_json(r));
  CHECK(r2.commutes(0, 1));
  CHECK_FALSE(r2.commutes(0, 2));

  const CertificateReport& rep = level1_report();
  GeometricConstants gc2 = constants_from_json(constants_to_json(rep.constants));
  CHECK(constants_to_json(gc2) == constants_to_json(rep.constants));
  SigmaMargin sm2 = sigma_from_json(sigma_to_json(rep.sigma));
  CHECK(sigma_to_json(sm2) == sigma_to_json(rep.sigma));

  RACG dihedral(2, {});
  SeparationRecord rec = separating_modulus(dihedral, {CoxWord{0, 1, 0, 1, 0, 1}});
  json sj = separation_to_json(rec);
  CHECK(sj.at("modulus").get<long long>() == rec.modulus);
  CHECK(sj.at("witnesses").size() == rec.witnesses.size());

  MarkedPolyhedron mp = prism_combinatorics(18);
  json mj = marked_polyhedron_to_json(mp);
  CHECK(mj.at("faces").size() == 7);
  CHECK(mj.at("edges").size() == 15);
  CHECK(mj.at("boundary_face").get<std::string>() ==
        mp.poly.face_names()[mp.boundary_face]);
}
