#pragma once

// Strict JSON encodings. Parsers throw Error(Parse) on any structural
// violation, including non-increasing edges and unknown keys.

#include <string>

#include <json.hpp>

#include "rainbow/collection.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/link.hpp"
#include "rainbow/pipeline.hpp"

namespace rainbow::io {

using Json = nlohmann::ordered_json;

Json to_json(const Hypergraph& h);
Json to_json(const Link& link);
Json to_json(const Collection& c);
Json to_json(const TransversalCertificate& cert);
Json to_json(const StepRecord& r);
Json to_json(const FailureReport& f);
Json to_json(const Verification& v);

Hypergraph hypergraph_from_json(const Json& j);
Link link_from_json(const Json& j);
Collection collection_from_json(const Json& j);
TransversalCertificate certificate_from_json(const Json& j);

// Accepts either a built-in name or a Link JSON document.
Link parse_link(const std::string& text);

Json parse(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// FNV-1a of the canonical serialisation.
std::string digest(const Json& j);

}  // namespace rainbow::io
