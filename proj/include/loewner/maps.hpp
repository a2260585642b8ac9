#pragma once

#include "loewner/sym_matrix.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace loewner {

// A positive linear map, described structurally.
//
// Text form (see parse):
//   identity
//   ntrace:K                        X -> (tr X / n) I_K
//   congruence:random:RxC[:SEED]    X -> V^T X V, V Gaussian R x C
//   congruence:isometry:RxC[:SEED]  V with orthonormal columns (unital)
//   congruence:scaled:C             V = C * I
//   kraus:N[:SEED]                  X -> sum_i V_i^T X V_i, N Gaussian n x n factors
//   kraus:N:unital[:SEED]           same, renormalized so that sum V_i^T V_i = I
//   pinching:B1,B2,...              keep the diagonal blocks of sizes B1, B2, ...
//   mix:W1*MAP1+W2*MAP2             weighted sum (weights >= 0, not normalized)
class MapSpec {
 public:
  struct Identity {
    int dim;
  };
  struct Congruence {
    Eigen::MatrixXd v;
  };
  struct KrausSum {
    std::vector<Eigen::MatrixXd> ops;
  };
  struct Pinching {
    std::vector<std::vector<int>> blocks;  // partition of 0..n-1
    int dim;
  };
  struct NormalizedTrace {
    int in_dim;
    int out_dim;
  };
  struct Mixture {
    std::vector<double> weights;
    std::vector<MapSpec> maps;
  };
  using Variant = std::variant<Identity, Congruence, KrausSum, Pinching, NormalizedTrace, Mixture>;

  static MapSpec identity(int dim);
  static MapSpec congruence(Eigen::MatrixXd v);
  static MapSpec kraus(std::vector<Eigen::MatrixXd> ops);
  static MapSpec pinching(int dim, std::vector<std::vector<int>> blocks);
  static MapSpec normalized_trace(int in_dim, int out_dim);
  static MapSpec mixture(std::vector<double> weights, std::vector<MapSpec> maps);

  // Random factors without an explicit seed are drawn from default_seed; the
  // resulting id() always carries the seed actually used.
  static MapSpec parse(std::string_view text, int in_dim, std::uint64_t default_seed = 0);

  int in_dim() const;
  int out_dim() const;
  const std::string& id() const { return id_; }
  const Variant& variant() const { return *v_; }

 private:
  MapSpec(Variant v, std::string id);
  std::shared_ptr<const Variant> v_;
  std::string id_;
};

SymMatrix apply(const MapSpec& phi, const SymMatrix& x);

struct UnitalityVerdict {
  bool is_unital;
  double deviation;  // ||phi(I) - I||_op
};

UnitalityVerdict check_unital(const MapSpec& phi);

}  // namespace loewner
