#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmb/amplitudes.hpp"
#include "mmb/kinematics.hpp"

namespace mmb {

struct ResidueSample {
    Divisor div;
    QI value;              // t A(k(t)) at t = 0
    int degree_bound = 0;  // bound that reproduced every sample
    int samples = 0;
};

// Residue along the pencil, trivialized by d/dt at t = 0.
ResidueSample extract_residue(const DgLaSpec& g, const Pencil& pencil, std::uint64_t seed,
                              const std::vector<QVec>& colors = {});

struct FusionValue {
    Mask J = 0;
    std::array<QI, 2> by_zeta;  // index 0: zeta = -, 1: zeta = +
    QI total;
};

// Lower amplitude on the legs of J (ascending) with output -k_J of
// helicity zeta, times the upper amplitude with input k_J of helicity
// -zeta followed by the legs of J^c; k_J = v w^T enters the lower one as
// v (-w)^T and the upper one as v w^T. For YM the internal colour runs over
// a basis e_a with the dual basis under the invariant form upstairs.
FusionValue fuse(const DgLaSpec& g, const KinematicTuple& base, const Divisor& div, Mask J,
                 std::uint64_t seed, const std::vector<QVec>& colors = {});

// Rank-one factorization of k_J at a point where Q_J = 0.
SpinorPair factor_internal(const KinematicTuple& base, Mask J);

struct FactorizationTrial {
    QI residue;
    QI rhs;                       // sum_J fuse_J / (dQ_J/dt at 0)
    std::vector<FusionValue> terms;
    std::vector<QI> inv_dQ;
    bool indeterminate = false;   // residue and rhs both zero
    std::optional<QI> ratio;      // residue / rhs
};

struct FactorizationReport {
    Divisor div;
    std::string helicities;
    std::vector<FactorizationTrial> trials;
    // all determinate trials share one ratio, and none has exactly one side zero
    bool constant() const;
    std::optional<QI> ratio() const;
};

FactorizationReport check_factorization(const DgLaSpec& g, const std::string& helicities,
                                        const Divisor& div, int trials, std::uint64_t seed);

// eps_12 eps_34 / Q12', eps_31 eps_24 / Q13', eps_23 eps_14 / Q23' at the base
// of a pencil through the all-plus (w spinors) or all-minus (v spinors) divisor.
std::array<QI, 3> relative_residues(const Pencil& p);

// Residue over fusion on (N = 4, ppmm:12|34, -++-).
QI calibrate_factorization(const DgLaSpec& g, std::uint64_t seed);

}  // namespace mmb
