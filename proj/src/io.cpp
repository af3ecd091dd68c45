#include "rainbow/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "rainbow/error.hpp"
#include "rainbow/rng.hpp"

namespace rainbow::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

void expect_keys(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad("expected an object");
  for (const char* k : keys) {
    if (!j.contains(k)) bad(std::string("missing key \"") + k + "\"");
  }
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) bad("unexpected key \"" + key + "\"");
  }
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<Edge> edges_from(const Json& j, std::size_t n, std::size_t k) {
  if (!j.is_array()) bad("edges must be an array");
  std::vector<Edge> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != k) bad("edge must be an array of k vertices");
    Edge edge;
    for (const auto& v : e) {
      const auto x = count(v, "vertex");
      if (x >= n) bad("vertex " + std::to_string(x) + " out of range");
      if (!edge.empty() && edge.back() >= x) bad("edge is not strictly increasing");
      edge.push_back(static_cast<Vertex>(x));
    }
    out.push_back(std::move(edge));
  }
  return out;
}

Json edges_to(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(e);
  return out;
}

}  // namespace

Json to_json(const Hypergraph& h) {
  return Json{{"n", h.n()}, {"k", h.k()}, {"edges", edges_to(h.edges())}};
}

Json to_json(const Link& link) { return Json{{"ell", link.ell()}, {"body", to_json(link.body())}}; }

Json to_json(const Collection& c) {
  Json members = Json::array();
  for (const auto& h : c.members()) members.push_back(to_json(h));
  return Json{{"n", c.n()}, {"k", c.k()}, {"members", std::move(members)}};
}

Json to_json(const TransversalCertificate& cert) {
  return Json{{"edges", edges_to(cert.edges)}, {"phi", cert.phi}};
}

Json to_json(const StepRecord& r) {
  Json extra = Json::object();
  for (const auto& [k, v] : r.extra) extra[k] = v;
  return Json{{"step", r.step},
              {"name", r.name},
              {"ok", r.ok},
              {"A", r.A},
              {"C", r.C},
              {"C1", r.C1},
              {"C2", r.C2},
              {"S2", r.S2},
              {"R1", r.R1},
              {"R2", r.R2},
              {"colours_consumed", r.colours_consumed},
              {"colours_unused", r.colours_unused},
              {"vertices_covered", r.vertices_covered},
              {"extra", std::move(extra)}};
}

Json to_json(const FailureReport& f) {
  Json trace = Json::array();
  for (const auto& r : f.trace) trace.push_back(to_json(r));
  return Json{{"step", f.step},
              {"step_name", f.step_name},
              {"sub_operation", f.sub_operation},
              {"message", f.message},
              {"attempt", f.attempt},
              {"seed", f.seed},
              {"trace", std::move(trace)}};
}

Json to_json(const Verification& v) {
  Json out{{"ok", v.ok()}, {"reason", std::string(to_string(v.reason))}};
  if (v.edge) out["edge"] = *v.edge;
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

Hypergraph hypergraph_from_json(const Json& j) {
  expect_keys(j, {"n", "k", "edges"});
  const auto n = count(j["n"], "n"), k = count(j["k"], "k");
  if (k < 1) bad("k must be positive");
  try {
    return Hypergraph(n, k, edges_from(j["edges"], n, k));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Link link_from_json(const Json& j) {
  expect_keys(j, {"ell", "body"});
  const auto ell = count(j["ell"], "ell");
  auto body = hypergraph_from_json(j["body"]);
  try {
    return make_link(std::move(body), ell);
  } catch (const Error& e) {
    bad(e.what());
  }
}

Collection collection_from_json(const Json& j) {
  expect_keys(j, {"n", "k", "members"});
  const auto n = count(j["n"], "n"), k = count(j["k"], "k");
  if (!j["members"].is_array()) bad("members must be an array");
  std::vector<Hypergraph> members;
  for (const auto& m : j["members"]) {
    auto h = hypergraph_from_json(m);
    if (h.n() != n || h.k() != k) bad("member disagrees with the collection's n or k");
    members.push_back(std::move(h));
  }
  try {
    return Collection(n, k, std::move(members));
  } catch (const Error& e) {
    bad(e.what());
  }
}

TransversalCertificate certificate_from_json(const Json& j) {
  expect_keys(j, {"edges", "phi"});
  if (!j["edges"].is_array() || !j["phi"].is_array()) bad("edges and phi must be arrays");
  TransversalCertificate cert;
  for (const auto& e : j["edges"]) {
    if (!e.is_array()) bad("edge must be an array");
    Edge edge;
    for (const auto& v : e) {
      const auto x = count(v, "vertex");
      if (!edge.empty() && edge.back() >= x) bad("edge is not strictly increasing");
      edge.push_back(static_cast<Vertex>(x));
    }
    cert.edges.push_back(std::move(edge));
  }
  for (const auto& p : j["phi"]) cert.phi.push_back(static_cast<Colour>(count(p, "colour")));
  return cert;
}

Link parse_link(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return link_from_json(parse(text));
  return link_from_name(text);
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string digest(const Json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(Rng::fnv1a(j.dump())));
  return buf;
}

}  // namespace rainbow::io
