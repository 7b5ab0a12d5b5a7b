#include "cycleclust/clustering.hpp"

#include <sstream>

#include <json.hpp>

#include "cycleclust/error.hpp"

namespace cycleclust {

CycleClustering::CycleClustering(int clusters, std::vector<int> assignment)
    : clusters_(clusters), assignment_(std::move(assignment)) {
  const int n = bins();
  if (clusters_ < 1 || clusters_ > n) {
    std::ostringstream os;
    os << "need 1 <= m <= n, got m=" << clusters_ << " n=" << n;
    throw Error(Errc::InvalidClustering, os.str());
  }
  std::vector<int> count(clusters_, 0);
  for (int i = 0; i < n; ++i) {
    const int k = assignment_[i];
    if (k < 0 || k >= clusters_) {
      throw Error(Errc::InvalidClustering,
                  "bin " + std::to_string(i) + " has label " + std::to_string(k));
    }
    ++count[k];
  }
  for (int k = 0; k < clusters_; ++k) {
    if (count[k] == 0) throw Error(Errc::InvalidClustering, "cluster " + std::to_string(k) + " is empty");
  }
}

BinSet CycleClustering::members(int k) const {
  BinSet out;
  for (int i = 0; i < bins(); ++i) {
    if (assignment_[i] == k) out.push_back(i);
  }
  return out;
}

std::vector<BinSet> CycleClustering::partition() const {
  std::vector<BinSet> out(clusters_);
  for (int i = 0; i < bins(); ++i) out[assignment_[i]].push_back(i);
  return out;
}

ObjectiveValue objective(const FlowMatrix& w, const CycleClustering& c, double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::InvalidArgument, "alpha must be positive");
  if (c.bins() != w.size()) {
    std::ostringstream os;
    os << "clustering covers " << c.bins() << " bins, matrix has " << w.size();
    throw Error(Errc::DimensionMismatch, os.str());
  }
  const auto parts = c.partition();
  ObjectiveValue value;
  value.alpha = alpha;
  if (c.clusters() >= 2) {
    for (int k = 0; k < c.clusters(); ++k) value.flow_part += net_flow(w, parts[k], parts[c.successor(k)]);
  }
  for (const auto& part : parts) value.coherence_part += coherence(w, part);
  value.total = value.flow_part + alpha * value.coherence_part;
  return value;
}

CycleClustering canonicalize(const CycleClustering& c) {
  const int m = c.clusters();
  const int shift = c.cluster_of(0);
  if (shift == 0) return c;
  std::vector<int> relabeled(c.assignment());
  for (int& k : relabeled) k = (k - shift + m) % m;
  return CycleClustering(m, std::move(relabeled));
}

CycleClustering reflect(const CycleClustering& c) {
  const int m = c.clusters();
  std::vector<int> relabeled(c.assignment());
  for (int& k : relabeled) k = (m - k) % m;
  return CycleClustering(m, std::move(relabeled));
}

double pair_contribution(const Matrix& q, int i, int j, int ci, int cj, int m, double alpha) {
  if (ci == cj) return alpha * (q(i, j) + q(j, i));
  if (m < 3) return 0.0;
  const int next_i = ci + 1 == m ? 0 : ci + 1;
  if (cj == next_i) return q(i, j) - q(j, i);
  const int next_j = cj + 1 == m ? 0 : cj + 1;
  if (ci == next_j) return q(j, i) - q(i, j);
  return 0.0;
}

std::string write_clustering_json(const CycleClustering& c, const ObjectiveValue& value) {
  nlohmann::ordered_json doc;
  doc["format"] = "cc-v1";
  doc["n"] = c.bins();
  doc["m"] = c.clusters();
  doc["alpha"] = value.alpha;
  std::vector<int> one_based;
  one_based.reserve(c.assignment().size());
  for (int k : c.assignment()) one_based.push_back(k + 1);
  doc["assignment"] = one_based;
  doc["objective"] = {{"total", value.total}, {"flow", value.flow_part}, {"coherence", value.coherence_part}};
  return doc.dump(2) + "\n";
}

ClusteringDocument read_clustering_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("cc-v1: ") + e.what());
  }
  try {
    if (doc.contains("format") && doc.at("format").get<std::string>() != "cc-v1")
      throw Error(Errc::ParseError, "cc-v1: unexpected format tag");
    const int n = doc.at("n").get<int>();
    const int m = doc.at("m").get<int>();
    auto one_based = doc.at("assignment").get<std::vector<int>>();
    if (static_cast<int>(one_based.size()) != n)
      throw Error(Errc::ParseError, "cc-v1: assignment length differs from n");
    for (int& k : one_based) k -= 1;
    ClusteringDocument out{CycleClustering(m, std::move(one_based)), {}};
    out.objective.alpha = doc.at("alpha").get<double>();
    const auto& obj = doc.at("objective");
    out.objective.total = obj.at("total").get<double>();
    out.objective.flow_part = obj.at("flow").get<double>();
    out.objective.coherence_part = obj.at("coherence").get<double>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("cc-v1: ") + e.what());
  }
}

}  // namespace cycleclust
