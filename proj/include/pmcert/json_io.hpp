#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmcert/coxeter.hpp"
#include "pmcert/develop.hpp"
#include "pmcert/graph.hpp"
#include "pmcert/polyhedron.hpp"
#include "pmcert/realize.hpp"
#include "pmcert/tits.hpp"

namespace pmcert {

using nlohmann::json;

inline json graph_to_json(const Multigraph& g) {
  json verts = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) verts.push_back(g.vertex_name(v));
  json edges = json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"label", e.label}});
  return {{"vertices", verts}, {"edges", edges}};
}

inline Multigraph graph_from_json(const json& j) {
  Multigraph g;
  for (const auto& name : j.at("vertices")) g.add_vertex(name.get<std::string>());
  for (const auto& ej : j.at("edges")) {
    int u = ej.at("u").get<int>(), v = ej.at("v").get<int>();
    if (u < 0 || v < 0 || u >= g.num_vertices() || v >= g.num_vertices())
      throw std::invalid_argument("edge endpoint out of range");
    g.add_edge(u, v, ej.value("label", std::string{}));
  }
  return g;
}

inline json racg_to_json(const RACG& g) {
  json pairs = json::array();
  for (int i = 0; i < g.generators; ++i)
    for (int j = i + 1; j < g.generators; ++j)
      if (g.commutes(i, j)) pairs.push_back({i, j});
  return {{"generators", g.generators}, {"commuting_pairs", pairs}};
}

inline RACG racg_from_json(const json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("commuting_pairs"))
    pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return RACG(j.at("generators").get<int>(), pairs);
}

inline json constants_to_json(const GeometricConstants& gc) {
  return {{"C", gc.C},
          {"L", gc.L},
          {"mu", gc.mu},
          {"D", gc.D},
          {"b", gc.b},
          {"R", gc.R},
          {"c", gc.c},
          {"girth_target", gc.girth_target},
          {"A_threshold", gc.A_threshold},
          {"b_fraction", gc.b_fraction},
          {"R_margin", gc.R_margin}};
}

inline GeometricConstants constants_from_json(const json& j) {
  GeometricConstants gc;
  gc.C = j.at("C").get<double>();
  gc.L = j.at("L").get<double>();
  gc.mu = j.at("mu").get<double>();
  gc.D = j.at("D").get<double>();
  gc.b = j.at("b").get<double>();
  gc.R = j.at("R").get<double>();
  gc.c = j.at("c").get<double>();
  gc.girth_target = j.at("girth_target").get<int>();
  gc.A_threshold = j.at("A_threshold").get<double>();
  gc.b_fraction = j.at("b_fraction").get<double>();
  gc.R_margin = j.at("R_margin").get<double>();
  return gc;
}

inline json sigma_to_json(const SigmaMargin& sm) {
  return {{"distance", sm.distance}, {"b", sm.b}, {"exceeds_b", sm.exceeds_b}};
}

inline SigmaMargin sigma_from_json(const json& j) {
  SigmaMargin sm;
  sm.distance = j.at("distance").get<double>();
  sm.b = j.at("b").get<double>();
  sm.exceeds_b = j.at("exceeds_b").get<bool>();
  return sm;
}

// Counterpart of polyhedron_from_json; angle submultiples are written as the
// plain integers of the instance, so the result parses back for any k.
inline json marked_polyhedron_to_json(const MarkedPolyhedron& mp) {
  const AngledPolyhedron& p = mp.poly;
  json faces = json::array();
  for (int f = 0; f < p.num_faces(); ++f)
    faces.push_back({{"id", f}, {"name", p.face_names()[f]}});
  json edges = json::array();
  for (const PolyEdge& e : p.edges())
    edges.push_back({{"f1", p.face_names()[e.f1]},
                     {"f2", p.face_names()[e.f2]},
                     {"angle_sub", e.angle_sub}});
  json out = {{"faces", faces}, {"edges", edges}};
  if (mp.boundary_face >= 0) out["boundary_face"] = p.face_names()[mp.boundary_face];
  if (mp.sigma_face >= 0) out["sigma_face"] = p.face_names()[mp.sigma_face];
  if (mp.bold_edge >= 0) {
    const PolyEdge& e = p.edges()[mp.bold_edge];
    out["bold_edge"] = {p.face_names()[e.f1], p.face_names()[e.f2]};
  }
  return out;
}

inline json realization_to_json(const RealizedPolyhedron& rp, const RealizationReport& rep) {
  int nf = rp.poly.num_faces();
  json gram = json::array();
  for (int i = 0; i < nf; ++i) {
    json row = json::array();
    for (int j = 0; j < nf; ++j) row.push_back(rp.gram(i, j));
    gram.push_back(row);
  }
  json lengths = json::array();
  for (int e = 0; e < rp.poly.num_edges(); ++e) lengths.push_back(edge_length(rp, e));
  return {{"residual", rp.residual_inf},
          {"restarts_used", rp.restarts_used},
          {"gram", gram},
          {"edge_lengths", lengths},
          {"max_unit_err", rep.max_unit_err},
          {"max_angle_err", rep.max_angle_err},
          {"positive_eigs", rep.positive_eigs},
          {"negative_eigs", rep.negative_eigs},
          {"near_zero_eig_max", rep.near_zero_eig_max},
          {"min_nonadjacent_gap", rep.min_nonadjacent_gap},
          {"max_vertex_side", rep.max_vertex_side}};
}

inline json separation_to_json(const SeparationRecord& rec) {
  json wits = json::array();
  for (const SeparationWitness& w : rec.witnesses)
    wits.push_back({{"word", w.word},
                    {"row", w.row},
                    {"col", w.col},
                    {"entry", w.entry},
                    {"expected", w.expected}});
  return {{"modulus", rec.modulus}, {"witnesses", wits}};
}

}  // namespace pmcert
