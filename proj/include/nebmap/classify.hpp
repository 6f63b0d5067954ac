#pragma once

#include <cstdint>
#include <optional>

#include "nebmap/algebra.hpp"
#include "nebmap/channels.hpp"

namespace nebmap {

struct ClassifyOptions {
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::size_t restarts = 64;
    std::size_t iters = 100;
};

// Hermiticity preservation: D Hermitian within tol.
bool is_hermiticity_preserving(const CoeffMatrix& d, double tol = kDefaultTol);
double hermiticity_defect(const CoeffMatrix& d);

struct CpResult {
    bool cp = false;
    std::size_t kraus_rank = 0; // meaningful when cp
    double min_eigenvalue = 0.0;
};

// Complete positivity: D PSD; kraus_rank is the numeric rank of D.
CpResult is_cp(const CoeffMatrix& d, double tol = kDefaultTol);

struct CcpResult {
    bool ccp = false;
    double min_eigenvalue = 0.0;
};

// Complete co-positivity: the coefficient matrix of (transpose after alpha)
// is PSD. Requires a Weyl basis (closed-form transpose kernel).
CcpResult is_ccp(const CoeffMatrix& d, double tol = kDefaultTol);

struct DefectResult {
    bool holds = false;
    double max_defect = 0.0;
};

// Group-indexed trace-preservation criterion:
// sum_x omega(x,g) D(x, x*g) = delta_{1,g} for every g.
DefectResult is_trace_preserving(const CoeffMatrix& d, double tol = kDefaultTol);

// Group-indexed unitality criterion, cross-validated against alpha(I) = I:
// sum_x omega(x, x^-1 z)/omega(z^-1 x, x^-1 z) D(x, z^-1 x) = delta_{1,z}.
DefectResult is_unital(const CoeffMatrix& d, double tol = kDefaultTol);

enum class PositivityStatus { violated, no_violation_found, implied_by_cp };

struct PositivityResult {
    PositivityStatus status = PositivityStatus::no_violation_found;
    double best_value = 0.0;               // smallest <v, alpha(uu*) v> seen
    std::vector<cplx> witness_u, witness_v; // set when violated
    std::size_t restarts_used = 0;
};

// Heuristic block-positivity search: minimizes f(u,v) = <v, alpha(uu*) v>
// by alternating minimal-eigenvector updates from random unit starts.
// "no violation found" is not a proof of positivity. Requires a
// Hermiticity-preserving map.
PositivityResult positivity_search(const CoeffMatrix& d, const ClassifyOptions& options = {});

struct EbResult {
    bool entanglement_breaking = false; // CP and co-CP (PPT decision, n = 2)
    CpResult cp;
    CcpResult ccp;
    bool certificate_found = false;
    KrausSet certificate; // all-rank-one Kraus list when found
};

// Entanglement breaking for dim 2. Decision: CP and co-CP. Certificate:
// a canonical Kraus list whose operators are all rank one (sufficient but
// not necessary); degenerate eigenvalue blocks are re-mixed deterministically
// to expose rank-one structure when a unitary mixing provides it.
EbResult is_entanglement_breaking_2x2(const CoeffMatrix& d, double tol = kDefaultTol);

struct ClassificationReport {
    std::size_t dim = 0;
    bool hermiticity_preserving = false;
    double hermiticity_defect = 0.0;
    CpResult cp;
    std::optional<CcpResult> ccp;
    // Absent when the map is not Hermiticity-preserving.
    std::optional<PositivityResult> positivity;
    DefectResult trace_preserving;
    DefectResult unital;
    std::optional<EbResult> eb; // present only when dim == 2
};

ClassificationReport classify(const CoeffMatrix& d, const ClassifyOptions& options = {});

std::string format_report(const ClassificationReport& report);

} // namespace nebmap
