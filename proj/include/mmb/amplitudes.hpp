#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmb/dgla.hpp"
#include "mmb/kinematics.hpp"
#include "mmb/trees.hpp"

namespace mmb {

// Derived seed for the salt-th independent draw.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Degree-one cycle of g at k = v w^T whose class is the image of the
// spinor power v^{2h} (sign +, in Gamma_+) or w^{2h} (sign -, in Gamma_-)
// under the zig-zag equivalence, tensored with u for YM.
struct HelicityState {
    SpinorPair sp;
    int sign = 1;
    int twice_h = 2;
    QVec u;
    QVec vec;
};

HelicityState helicity_state(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                             std::uint64_t seed = 0);

// Functional on degree-two cycles of g at k = v w^T: the coefficient of the
// class d'(s) in Gamma_sign with s = v^{2h} (sign +) or w^{2h} (sign -),
// after contracting the internal factor with u through the invariant form.
class OutputCovector {
public:
    OutputCovector(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                   std::uint64_t seed = 0);
    QI operator()(const QVec& y) const;
    // y -> cycle representing the class in Gamma_sign, degree two
    QVec to_gamma(const QVec& y) const;

private:
    const DgLaSpec* g_;
    QVec u_;
    QMat toGamma_;  // psi_s L on the base complex
    QMat basis_;    // [d'(s) | image of d at k] in Gamma^2
    Grading gamma_grading_;
};

OutputCovector output_covector(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                               std::uint64_t seed = 0);

// Leg l gets coordinates (l+1)^a + a, a = 0, 1, ..., in the basis of u.
std::vector<QVec> default_colors(const DgLaSpec& g, int N);

struct AmplitudeValue {
    std::string helicities;
    QI value;
    long trees = 0;
};

// Scalar minimal-model amplitude with inputs 1..N-1 and output N. Input
// leg i with helicity s feeds the state of Gamma sign -s; the output
// coefficient is read at -k_N = v_N (-w_N)^T in Gamma sign s_N. Internal
// lines use trivial homotopies seeded by `seed`.
AmplitudeValue amplitude(const DgLaSpec& g, const KinematicTuple& kin, std::uint64_t seed,
                         const std::vector<QVec>& colors = {});

// Same value summed tree by tree through eval_tree; skip drops one tree.
AmplitudeValue amplitude_by_trees(const DgLaSpec& g, const KinematicTuple& kin, std::uint64_t seed,
                                  const std::vector<QVec>& colors = {}, int skip = -1);

// (w_i^T eps w_j)^h v^{2h} (x) v^{2h} (x) w_m^{2h} for the plus legs i < j on
// the shared-v branch, the transpose on the shared-w branch, expressed in
// the state basis of the tuple's own spinors.
QI three_point_closed_form(const KinematicTuple& kin, const std::string& helicities, int twice_h);

// Value at v_i -> lambda v_i over the value at kin, with the weights of the
// input states (lambda^{2h} per minus leg), of the output class
// (lambda^{-2h} for a plus output) and of d' (lambda) divided out. For the
// bracket on fixed classes this is lambda^{3-2n}, n = N - 1.
QI fixed_class_scaling(const DgLaSpec& g, const KinematicTuple& kin, const QI& lambda,
                       std::uint64_t seed);

struct GaugeReport {
    int trials = 0;
    int seeds = 0;
    std::vector<std::vector<QI>> values;  // [trial][seed]
    bool all_equal() const;
};

GaugeReport gauge_independence_suite(const DgLaSpec& g, int N, const std::string& helicities,
                                     int trials, std::uint64_t seed, int seeds = 3,
                                     bool drop_tree = false);

}  // namespace mmb
