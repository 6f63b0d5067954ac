#include "nebmap/classify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nebmap {

double hermiticity_defect(const CoeffMatrix& d) {
    return max_abs_diff(d.mat, d.mat.adjoint());
}

bool is_hermiticity_preserving(const CoeffMatrix& d, double tol) {
    return hermiticity_defect(d) <= tol * std::max(1.0, d.mat.max_abs());
}

CpResult is_cp(const CoeffMatrix& d, double tol) {
    const PsdReport psd = is_psd(d.mat, tol);
    return CpResult{psd.psd, psd.numeric_rank, psd.min_eigenvalue};
}

CcpResult is_ccp(const CoeffMatrix& d, double tol) {
    if (!d.basis->is_weyl()) {
        throw precondition_error("is_ccp: requires a Weyl basis");
    }
    const CoeffMatrix composed = compose(transpose_coeff(d.basis), d);
    const PsdReport psd = is_psd(composed.mat, tol);
    return CcpResult{psd.psd, psd.min_eigenvalue};
}

DefectResult is_trace_preserving(const CoeffMatrix& d, double tol) {
    const IndexGroup& group = d.basis->group();
    const Cocycle& omega = d.basis->cocycle();
    const std::size_t order = group.order();
    double defect = 0.0;
    for (std::size_t g = 0; g < order; ++g) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < order; ++x) {
            s += omega(x, g) * d.mat(x, group.mul(x, g));
        }
        const cplx expected = g == group.identity() ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        defect = std::max(defect, std::abs(s - expected));
    }
    return DefectResult{defect <= tol, defect};
}

DefectResult is_unital(const CoeffMatrix& d, double tol) {
    const IndexGroup& group = d.basis->group();
    const Cocycle& omega = d.basis->cocycle();
    const std::size_t order = group.order();
    double defect = 0.0;
    for (std::size_t z = 0; z < order; ++z) {
        const std::size_t zinv = group.inv(z);
        cplx s = 0.0;
        for (std::size_t x = 0; x < order; ++x) {
            const std::size_t xinv_z = group.mul(group.inv(x), z);
            const std::size_t zinv_x = group.mul(zinv, x);
            s += omega(x, xinv_z) / omega(zinv_x, xinv_z) * d.mat(x, zinv_x);
        }
        const cplx expected = z == group.identity() ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        defect = std::max(defect, std::abs(s - expected));
    }
    // Cross-validate against the action on the identity matrix.
    const std::size_t n = d.dim();
    defect = std::max(defect, max_abs_diff(apply(d, CMatrix::identity(n)), CMatrix::identity(n)));
    return DefectResult{defect <= tol, defect};
}

// ---------------------------------------------------------------------------
// positivity search

namespace {

std::vector<cplx> random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(n);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (cplx& e : v) {
            e = cplx(gauss(rng), gauss(rng));
            norm2 += std::norm(e);
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& e : v) e *= inv;
    return v;
}

CMatrix outer(const std::vector<cplx>& v) {
    CMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

// Minimal eigenvector of the Hermitian part of m.
std::pair<double, std::vector<cplx>> min_eigenpair(const CMatrix& m) {
    const CMatrix h = (m + m.adjoint()) * cplx(0.5, 0.0);
    const EigDecomposition eig = hermitian_eig(h, 1e-6);
    std::vector<cplx> v(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) v[i] = eig.eigenvectors(i, 0);
    return {eig.eigenvalues.front(), v};
}

} // namespace

PositivityResult positivity_search(const CoeffMatrix& d, const ClassifyOptions& options) {
    if (!is_hermiticity_preserving(d, options.tol)) {
        throw precondition_error("positivity_search: map is not Hermiticity-preserving");
    }
    const std::size_t n = d.dim();
    const CoeffMatrix adj = dagger(d);
    const double scale = std::max(1.0, d.mat.max_abs());
    const double violation_threshold = -options.tol * scale;

    PositivityResult result;
    result.best_value = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(options.seed);

    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        result.restarts_used = restart + 1;
        std::vector<cplx> u = random_unit_vector(rng, n);
        std::vector<cplx> v = random_unit_vector(rng, n);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it < options.iters; ++it) {
            // Best v for this u.
            auto [fv, v_new] = min_eigenpair(apply(d, outer(u)));
            v = std::move(v_new);
            result.best_value = std::min(result.best_value, fv);
            if (fv < violation_threshold) {
                result.status = PositivityStatus::violated;
                result.witness_u = u;
                result.witness_v = v;
                return result;
            }
            // Best u for this v: f(u,v) = <u, dagger(alpha)(vv*) u>.
            auto [fu, u_new] = min_eigenpair(apply(adj, outer(v)));
            u = std::move(u_new);
            result.best_value = std::min(result.best_value, fu);
            if (fu < violation_threshold) {
                result.status = PositivityStatus::violated;
                result.witness_u = u;
                result.witness_v = v;
                return result;
            }
            if (std::abs(prev - fu) <= 1e-13 * std::max(1.0, std::abs(fu))) break;
            prev = fu;
        }
    }
    result.status = PositivityStatus::no_violation_found;
    return result;
}

// ---------------------------------------------------------------------------
// entanglement breaking (dim 2)

namespace {

cplx det2(const CMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

bool rank_one_2x2(const CMatrix& m, double tol) {
    // Singular values via the 2x2 Gram matrix.
    const EigDecomposition eig = hermitian_eig(m.adjoint() * m, 1e-6);
    const double smax = std::sqrt(std::max(0.0, eig.eigenvalues.back()));
    const double smin = std::sqrt(std::max(0.0, eig.eigenvalues.front()));
    if (smax == 0.0) return true;
    return smin <= std::max(tol, 1e-12) * smax;
}

// Unitarily re-mix a pair of Kraus operators (same eigenvalue block) so that
// both have zero determinant, when the determinant quadratic
// det(x A + y B) = a x^2 + b x y + c y^2 has orthogonal root directions.
bool zero_det_pair(CMatrix& a_op, CMatrix& b_op, double tol) {
    const cplx a = det2(a_op);
    const cplx c = det2(b_op);
    const cplx b = det2(a_op + b_op) - a - c;
    const double scale = std::max(a_op.frobenius_norm(), b_op.frobenius_norm());
    const double eps = std::max(tol, 1e-12) * std::max(1.0, scale * scale);
    if (std::abs(a) <= eps && std::abs(c) <= eps) return true; // already both rank one
    if (std::abs(a) <= eps || std::abs(c) <= eps) {
        // One root direction sits on a coordinate axis; its orthogonal
        // complement is the other axis, which is not a root here.
        return false;
    }
    // Roots of a t^2 + b t + c = 0 with t = x/y.
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    cplx q = (std::abs(b + disc) >= std::abs(b - disc)) ? (b + disc) : (b - disc);
    if (std::abs(q) == 0.0) return false; // double root: directions coincide
    q *= -0.5;
    const cplx t1 = q / a;
    const cplx t2 = c / q;
    // Directions (t,1), normalized.
    const double n1 = std::sqrt(std::norm(t1) + 1.0);
    const double n2 = std::sqrt(std::norm(t2) + 1.0);
    const cplx d1[2] = {t1 / n1, cplx(1.0, 0.0) / n1};
    const cplx d2[2] = {t2 / n2, cplx(1.0, 0.0) / n2};
    const cplx overlap = std::conj(d1[0]) * d2[0] + std::conj(d1[1]) * d2[1];
    if (std::abs(overlap) > 1e-7) return false;
    // Use the exact orthogonal complement of d1 as the second column so the
    // mixing is exactly unitary.
    const cplx e2[2] = {-std::conj(d1[1]), std::conj(d1[0])};
    const CMatrix new_a = a_op * d1[0] + b_op * d1[1];
    const CMatrix new_b = a_op * e2[0] + b_op * e2[1];
    a_op = new_a;
    b_op = new_b;
    return true;
}

// Within blocks of (nearly) equal eigenvalue lambda_j = |L_j|_F^2 / n, mix
// pairs unitarily to zero determinants.
void expose_rank_one_structure(KrausSet& kraus, double tol) {
    const std::size_t n = kraus.dim;
    const std::size_t count = kraus.ops.size();
    std::vector<double> lambda(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double f = kraus.ops[j].frobenius_norm();
        lambda[j] = f * f / static_cast<double>(n);
    }
    double lambda_max = 0.0;
    for (double l : lambda) lambda_max = std::max(lambda_max, l);
    const double block_tol = 1e-8 * std::max(1.0, lambda_max);

    for (int sweep = 0; sweep < 4; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                if (std::abs(lambda[i] - lambda[j]) > block_tol) continue;
                if (rank_one_2x2(kraus.ops[i], tol) && rank_one_2x2(kraus.ops[j], tol)) continue;
                if (zero_det_pair(kraus.ops[i], kraus.ops[j], tol)) changed = true;
            }
        if (!changed) break;
    }
}

} // namespace

EbResult is_entanglement_breaking_2x2(const CoeffMatrix& d, double tol) {
    if (d.dim() != 2) {
        throw precondition_error("is_entanglement_breaking_2x2: map dimension must be 2");
    }
    EbResult out;
    out.cp = is_cp(d, tol);
    if (d.basis->is_weyl()) {
        out.ccp = is_ccp(d, tol);
    } else {
        // Re-express over the standard Weyl basis; co-positivity is a
        // property of the map, not of the basis.
        const CoeffMatrix reexpressed =
            decompose([&d](const CMatrix& x) { return apply(d, x); }, NiceErrorBasis::weyl(2), tol);
        out.ccp = is_ccp(reexpressed, tol);
    }
    out.entanglement_breaking = out.cp.cp && out.ccp.ccp;

    if (out.cp.cp) {
        KrausSet kraus = kraus_from_coeff(d, tol);
        expose_rank_one_structure(kraus, tol);
        bool all_rank_one = true;
        for (const CMatrix& op : kraus.ops) all_rank_one = all_rank_one && rank_one_2x2(op, tol);
        if (all_rank_one && !kraus.ops.empty()) {
            out.certificate_found = true;
            out.certificate = std::move(kraus);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// report

ClassificationReport classify(const CoeffMatrix& d, const ClassifyOptions& options) {
    ClassificationReport report;
    report.dim = d.dim();
    report.hermiticity_defect = hermiticity_defect(d);
    report.hermiticity_preserving = is_hermiticity_preserving(d, options.tol);
    report.cp = is_cp(d, options.tol);

    if (d.basis->is_weyl()) {
        report.ccp = is_ccp(d, options.tol);
    } else {
        const CoeffMatrix reexpressed = decompose(
            [&d](const CMatrix& x) { return apply(d, x); },
            NiceErrorBasis::weyl(d.dim()), options.tol);
        report.ccp = is_ccp(reexpressed, options.tol);
    }

    if (report.cp.cp) {
        PositivityResult implied;
        implied.status = PositivityStatus::implied_by_cp;
        report.positivity = implied;
    } else if (report.hermiticity_preserving) {
        report.positivity = positivity_search(d, options);
    }

    report.trace_preserving = is_trace_preserving(d, options.tol);
    report.unital = is_unital(d, options.tol);

    if (d.dim() == 2) {
        report.eb = is_entanglement_breaking_2x2(d, options.tol);
    }
    return report;
}

std::string format_report(const ClassificationReport& report) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(3);
    auto yn = [](bool b) { return b ? "yes" : "no "; };

    os << "hermiticity-preserving: " << yn(report.hermiticity_preserving)
       << " (defect " << report.hermiticity_defect << ")\n";
    os << "completely-positive:    " << yn(report.cp.cp) << " (min eigenvalue "
       << report.cp.min_eigenvalue;
    if (report.cp.cp) os << ", kraus rank " << report.cp.kraus_rank;
    os << ")\n";
    if (report.ccp) {
        os << "completely-co-positive: " << yn(report.ccp->ccp) << " (min eigenvalue "
           << report.ccp->min_eigenvalue << ")\n";
    }
    os << "positive:               ";
    if (!report.positivity) {
        os << "not applicable (map is not Hermiticity-preserving)\n";
    } else {
        switch (report.positivity->status) {
            case PositivityStatus::implied_by_cp:
                os << "yes (implied by complete positivity)\n";
                break;
            case PositivityStatus::no_violation_found:
                os << "no violation found (best value " << report.positivity->best_value << ", "
                   << report.positivity->restarts_used << " restarts)\n";
                break;
            case PositivityStatus::violated: {
                os << "violated (value " << report.positivity->best_value << ")\n";
                os << "  witness u:";
                for (const cplx& e : report.positivity->witness_u) {
                    os << " (" << e.real() << "," << e.imag() << ")";
                }
                os << "\n  witness v:";
                for (const cplx& e : report.positivity->witness_v) {
                    os << " (" << e.real() << "," << e.imag() << ")";
                }
                os << "\n";
                break;
            }
        }
    }
    os << "trace-preserving:       " << yn(report.trace_preserving.holds) << " (defect "
       << report.trace_preserving.max_defect << ")\n";
    os << "unital:                 " << yn(report.unital.holds) << " (defect "
       << report.unital.max_defect << ")\n";
    if (report.eb) {
        os << "entanglement-breaking:  " << yn(report.eb->entanglement_breaking)
           << " (rank-one certificate: "
           << (report.eb->certificate_found ? "found, " + std::to_string(report.eb->certificate.ops.size())
                                                  + " operators"
                                            : "not found")
           << ")\n";
    } else if (report.dim != 2) {
        os << "entanglement-breaking:  n/a (decided for dimension 2 only)\n";
    }
    return os.str();
}

} // namespace nebmap
