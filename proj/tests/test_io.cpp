#include <doctest.h>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/io.hpp"

using namespace rainbow;

namespace {

bool parse_error(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::Parse;
  }
  return false;
}

}  // namespace

TEST_CASE("collections round-trip") {
  const auto c = bridge_construction(9, 10);
  const auto text = io::to_json(c).dump();
  CHECK(io::collection_from_json(io::parse(text)) == c);
}

TEST_CASE("hypergraph parser is strict") {
  CHECK(io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[[0,1],[1,2]]})")).num_edges() == 2);
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[[1,0]]})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[[0,3]]})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[[0,1,2]]})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[],"x":1})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":-3,"k":2,"edges":[]})")); }));
  CHECK(parse_error([] { io::hypergraph_from_json(io::parse(R"({"n":3,"k":2,"edges":[[0,1],[0,1]]})")); }));
  CHECK(parse_error([] { io::parse("{"); }));
}

TEST_CASE("links parse from names and JSON") {
  CHECK(io::parse_link("triangle") == triangle_link());
  const auto j = io::to_json(pillar_link()).dump();
  CHECK(io::parse_link(j) == pillar_link());
  CHECK(parse_error([] { io::parse_link(R"({"ell":2,"body":{"n":3,"k":2,"edges":[[0,1]]}})"); }));
}

TEST_CASE("certificates round-trip") {
  const TransversalCertificate cert{{{0, 1}, {1, 2}, {0, 2}}, {2, 0, 1}};
  const auto back = io::certificate_from_json(io::parse(io::to_json(cert).dump()));
  CHECK(back.edges == cert.edges);
  CHECK(back.phi == cert.phi);
  CHECK(parse_error([] { io::certificate_from_json(io::parse(R"({"edges":[[2,1]],"phi":[0]})")); }));
}

TEST_CASE("digest depends only on content") {
  const auto a = io::to_json(dirac_extremal(5));
  CHECK(io::digest(a) == io::digest(io::parse(a.dump(2))));
  CHECK(io::digest(a) != io::digest(io::to_json(dirac_extremal(6))));
}
