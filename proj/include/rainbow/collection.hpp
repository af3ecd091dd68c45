#pragma once

// Hypergraph collections (member index = colour), threshold hypergraphs,
// transversal certificates and their verification.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"
#include "rainbow/link.hpp"

namespace rainbow {

using Colour = std::uint32_t;

class Collection {
 public:
  Collection() = default;
  // All members must share n and k.
  Collection(std::size_t n, std::size_t k, std::vector<Hypergraph> members);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return members_.size(); }
  const Hypergraph& operator[](Colour c) const { return members_[c]; }
  const std::vector<Hypergraph>& members() const noexcept { return members_; }

  // Colours whose member contains the sorted edge, restricted to `allowed`
  // when given. Increasing order.
  std::vector<Colour> colours_of(std::span<const Vertex> edge) const;
  std::vector<Colour> colours_of(std::span<const Vertex> edge, std::span<const Colour> allowed) const;

  friend bool operator==(const Collection&, const Collection&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 2;
  std::vector<Hypergraph> members_;
};

std::vector<Colour> all_colours(const Collection& c);

// Throws InvalidArgument on an empty collection.
std::size_t collection_min_degree(const Collection& c, std::size_t d);

// Edges lying in at least theta of the given colours.
Hypergraph threshold_hypergraph(const Collection& c, std::span<const Colour> colours, std::size_t theta);

// Union of the members with the given colours.
Hypergraph union_hypergraph(const Collection& c, std::span<const Colour> colours);

struct TransversalCertificate {
  std::vector<Edge> edges;  // sorted tuples
  std::vector<Colour> phi;  // parallel to edges

  friend bool operator==(const TransversalCertificate&, const TransversalCertificate&) = default;
};

enum class Diagnosis {
  Ok,
  Malformed,        // arrays of different length, bad tuple, colour out of range, repeated edge
  DuplicateColour,
  EdgeNotInColour,
  NotSpanning,
  NotCycleShape,
};

std::string_view to_string(Diagnosis d);

struct Verification {
  Diagnosis reason = Diagnosis::Ok;
  std::optional<std::size_t> edge;  // offending edge index when there is one
  std::string detail;

  bool ok() const noexcept { return reason == Diagnosis::Ok; }
  explicit operator bool() const noexcept { return ok(); }
};

struct ExpectedShape {
  Link link;
  std::size_t n;
};

Verification verify_certificate(const Collection& c, const TransversalCertificate& cert,
                                const std::optional<ExpectedShape>& expected = std::nullopt);

// Perfect matching of target edges into allowed colours; nullopt iff none exists.
std::optional<TransversalCertificate> rainbow_colouring(const Collection& c,
                                                        std::span<const Edge> target,
                                                        std::span<const Colour> allowed);

}  // namespace rainbow
