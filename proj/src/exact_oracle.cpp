#include "vlo/exact_oracle.hpp"

#include "vlo/sssp.hpp"

namespace vlo {

LabelStore::LabelStore(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (labels_[v] != kNoLabel) members_[labels_[v]].insert(static_cast<Vertex>(v));
}

std::vector<Vertex> LabelStore::members(Label label) const {
  auto it = members_.find(label);
  if (it == members_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::size_t LabelStore::count(Label label) const {
  auto it = members_.find(label);
  return it == members_.end() ? 0 : it->second.size();
}

void LabelStore::relabel(Vertex v, Label label) {
  Label& cur = labels_[static_cast<std::size_t>(v)];
  if (cur == label) return;
  if (cur != kNoLabel) {
    auto it = members_.find(cur);
    it->second.erase(v);
    if (it->second.empty()) members_.erase(it);
  }
  cur = label;
  if (label != kNoLabel) members_[label].insert(v);
}

bool LabelStore::consistent() const {
  std::size_t total = 0;
  for (const auto& [label, set] : members_) {
    if (set.empty()) return false;
    for (Vertex v : set)
      if (labels_[static_cast<std::size_t>(v)] != label) return false;
    total += set.size();
  }
  std::size_t labeled = 0;
  for (Label l : labels_) labeled += l != kNoLabel;
  return total == labeled;
}

ExactOracle::ExactOracle(const LabeledGraph& g) : graph_(g), store_(g.labels()) {}

std::vector<Length> ExactOracle::label_distances(Label label, bool into_label) const {
  auto sources = store_.members(label);
  if (sources.empty()) return std::vector<Length>(graph_.vertex_count(), kInfinity);
  std::vector<Length> dist;
  sssp_distances(graph_, sources, into_label ? Direction::kReverse : Direction::kForward, dist);
  return dist;
}

Length ExactOracle::query(Vertex u, Label label) const {
  ++counters_.queries;
  if (store_.label(u) == label) return 0;
  if (store_.count(label) == 0) return kInfinity;
  counters_.query_probes += graph_.vertex_count();
  return label_distances(label, true)[static_cast<std::size_t>(u)];
}

Length ExactOracle::query_from_label(Label label, Vertex u) const {
  ++counters_.queries;
  if (store_.label(u) == label) return 0;
  if (store_.count(label) == 0) return kInfinity;
  counters_.query_probes += graph_.vertex_count();
  return label_distances(label, false)[static_cast<std::size_t>(u)];
}

void ExactOracle::update(Vertex v, Label label) {
  ++counters_.updates;
  ++counters_.update_touches;
  store_.relabel(v, label);
}

}  // namespace vlo
