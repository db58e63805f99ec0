#pragma once

#include <array>
#include <memory>

#include "vlo/decomposition.hpp"
#include "vlo/oracle.hpp"

namespace vlo {

// One member graph: the vertices of bands lo..hi plus, when lo > 0, a virtual
// vertex standing for everything below band lo.
struct FamilyMember {
  int lo = 0;
  int hi = 0;
  LabeledGraph graph;
  Embedding embedding;
  std::vector<Vertex> global;  // local id to id in g; kNoVertex for the virtual vertex
  Vertex virtual_root = kNoVertex;
  Vertex tree_root = kNoVertex;
};

struct AlphaFamily {
  Length alpha = 0;
  Vertex root = 0;
  // Lengths through the virtual vertex start at this value.
  Length big = 0;
  std::vector<Length> root_distance;  // undirected distance from root
  std::vector<int> band;
  std::vector<FamilyMember> members;
  // Per vertex: (member, local id) for every member containing it.
  std::vector<std::vector<std::pair<int, Vertex>>> placements;
  // Member id for each index i = 0 .. top band + 2.
  std::vector<int> member_of_index;

  std::size_t total_vertices() const;
  std::size_t total_edges() const;
  // Member ids of bands j-2 .. j with j = band + 2, deduplicated.
  std::vector<int> designated(Vertex v) const;
  DecompositionOptions options(int member, const DecompositionOptions& base = {}) const;
};

// Bands of width alpha by undirected distance from `root`; member i spans
// bands i-2 .. i.
AlphaFamily build_alpha_family(const LabeledGraph& g, Length alpha, Vertex root = 0);

// Scale oracles built per family member, answering with the best member.
class FamilyOracle final : public LabelOracle {
 public:
  FamilyOracle(std::shared_ptr<const AlphaFamily> family, std::vector<std::unique_ptr<LabelOracle>> members,
               std::string name);

  std::string name() const override { return name_; }
  std::size_t vertex_count() const override { return family_->placements.size(); }
  Length query(Vertex u, Label label) const override;
  Length query_from_label(Label label, Vertex u) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return labels_[static_cast<std::size_t>(v)]; }

  const AlphaFamily& family() const { return *family_; }
  const LabelOracle& member(int i) const { return *members_[static_cast<std::size_t>(i)]; }

 private:
  std::shared_ptr<const AlphaFamily> family_;
  std::vector<std::unique_ptr<LabelOracle>> members_;
  std::vector<Label> labels_;
  std::string name_;
};

enum class ScaleKind : std::uint8_t { kFastQuery, kDirected };

// Builds, for each member, one decomposition and one oracle per accuracy.
std::vector<std::unique_ptr<FamilyOracle>> build_family_oracles(const LabeledGraph& g, Length alpha,
                                                                std::span<const Rational> accuracies, ScaleKind kind,
                                                                const DecompositionOptions& base = {});

// Stretch oracle from scale oracles at alpha = 2^i: a binary search over
// coarse oracles finds the scale, fine oracles there and one above answer.
class StretchOracle final : public LabelOracle {
 public:
  StretchOracle(const LabeledGraph& g, Rational eps, ScaleKind kind = ScaleKind::kFastQuery,
                const DecompositionOptions& base = {});

  std::string name() const override { return kind_ == ScaleKind::kFastQuery ? "fast-query" : "directed"; }
  std::size_t vertex_count() const override { return labels_.size(); }
  Length query(Vertex u, Label label) const override;
  Length query_from_label(Label label, Vertex u) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return labels_[static_cast<std::size_t>(v)]; }

  Rational eps() const { return eps_; }
  int scale_count() const { return static_cast<int>(coarse_.size()); }
  Rational coarse_accuracy() const { return coarse_accuracy_; }
  Rational fine_accuracy() const { return fine_accuracy_; }

 private:
  Length answer(Vertex u, Label label, bool from_label) const;
  void absorb(const LabelOracle& o) const;
  int top() const { return static_cast<int>(coarse_.size()) - 2; }

  Rational eps_;
  Rational coarse_accuracy_;
  Rational fine_accuracy_;
  ScaleKind kind_;
  std::vector<Label> labels_;
  std::vector<std::unique_ptr<FamilyOracle>> coarse_, fine_;
};

// Upper bound on every finite distance: out plus in eccentricity of vertex 0.
Length distance_upper_bound(const LabeledGraph& g);

}  // namespace vlo
