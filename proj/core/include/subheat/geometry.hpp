#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace subheat {

enum class ModelKind { heisenberg, flat_torus };

std::string to_string(ModelKind kind);

// Model descriptor.  n is the lattice resolution per unit length and the
// grid scale is h = 1/n exactly.
struct ModelSpec {
  ModelKind kind = ModelKind::flat_torus;
  int n = 0;

  double h() const { return 1.0 / n; }
  std::string to_string() const;

  // Parses "heisenberg:n=6" / "flat_torus:n=16".
  static ModelSpec parse(const std::string& text);
};

struct Edge {
  std::int32_t tail = 0;
  std::int32_t head = 0;
  std::int32_t generator = 0;  // 0 or 1
};

// Discretized model manifold: nodes, the two horizontal generator shifts,
// and the node measure.  heisenberg nodes are triples (a,b,c) with
// a,b in Z_n and c in Z_{n^2} (central spacing h^2); flat_torus nodes are
// pairs (a,b) in Z_n x Z_n.  Node indexing is lexicographic.
struct DiscreteGeometry {
  ModelSpec spec;
  int node_count = 0;
  double h = 0.0;
  Eigen::VectorXd mu;                       // node measure, sums to 1
  std::vector<Edge> edges;                  // 2 outgoing edges per node
  std::array<std::vector<std::int32_t>, 2> shift;      // shift[g][v] = v.g
  std::array<std::vector<std::int32_t>, 2> shift_inv;  // shift_inv[g][v] = v.g^{-1}

  double total_measure() const { return mu.sum(); }

  // heisenberg: index <-> (a, b, c); flat_torus: c ignored and zero.
  int index_of(int a, int b, int c) const;
  std::array<int, 3> coords_of(int v) const;
};

using GeometryPtr = std::shared_ptr<const DiscreteGeometry>;

// Builds the model geometry; throws invalid_argument for n < 3 (the shift
// and its inverse coincide below that resolution).
GeometryPtr build_model(const ModelSpec& spec);

// Word metric scaled by h: rho(x,y) = h * (undirected generator hop count).
struct DistanceField {
  Eigen::MatrixXd rho;   // length units
  double h = 0.0;

  int nodes() const { return static_cast<int>(rho.rows()); }
  double diameter() const { return rho.maxCoeff(); }
  int hops(int x, int y) const {
    return static_cast<int>(std::lround(rho(x, y) / h));
  }
  // Distinct positive hop radii realized from node x, shifted by h/2 so each
  // value d+h/2 captures the closed ball of hop radius d.
  std::vector<double> realized_radii(int x) const;
};

DistanceField cc_distance_matrix(const DiscreteGeometry& geom);

// V(x, delta) = sum of mu over the open ball {y : rho(x,y) < delta}.
double ball_volume(const DiscreteGeometry& geom, const DistanceField& dist,
                   int x, double delta);

// O(1) ball-volume lookups backed by per-node cumulative hop counts.
class VolumeProfile {
 public:
  VolumeProfile(const DiscreteGeometry& geom, const DistanceField& dist);

  // V(x, delta); delta in length units.
  double operator()(int x, double delta) const;
  int max_hops() const { return max_hops_; }

 private:
  Eigen::MatrixXd cumulative_;  // cumulative_(x, k) = mu{ y : hops(x,y) <= k }
  double h_ = 0.0;
  int max_hops_ = 0;
};

struct DoublingSample {
  int x = 0;
  double delta = 0.0;
  double gamma = 0.0;
  double ratio = 0.0;  // log(V(x,gamma*delta)/V(x,delta)) / log(gamma)
};

struct DoublingReport {
  double Q_fit = 0.0;   // upper growth exponent (sup over samples)
  double q_fit = 0.0;   // lower growth exponent below delta0 (inf over samples)
  double delta0 = 0.0;  // scale cap used for q
  std::vector<DoublingSample> residuals;
  DoublingSample witness_Q;
  DoublingSample witness_q;
};

// Fits growth exponents from log volume ratios over pairs of realized radii.
// Q uses gamma >= 1 samples with gamma*delta <= diameter/2; q uses gamma < 1
// samples with delta <= delta0 (default diameter/4).
DoublingReport fit_doubling_exponents(const DiscreteGeometry& geom,
                                      const DistanceField& dist,
                                      double delta0 = -1.0);

}  // namespace subheat
