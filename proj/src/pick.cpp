#include "nevlab/pick.hpp"

#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/quadrature.hpp"

namespace nevlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

cdouble eval_resolvent(const PickFunction::Resolvent& r, cdouble z) {
    const auto n = r.matrix.rows();
    Eigen::MatrixXcd shifted = r.matrix.cast<cdouble>();
    shifted.diagonal().array() -= z;
    Eigen::VectorXcd x = shifted.partialPivLu().solve(r.phi.cast<cdouble>());
    cdouble out = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) out += r.phi[i] * x[i];
    return out;
}

} // namespace

// ------------------------------------------------------------------ //
// construction
// ------------------------------------------------------------------ //

PickFunction PickFunction::from_nevanlinna(double a, double b, Measure mu) {
    if (!std::isfinite(a)) throw ArgumentError("constant term must be finite");
    if (!(b >= 0.0) || !std::isfinite(b))
        throw ArgumentError("linear coefficient must be nonnegative");
    PickFunction f(Nevanlinna{a, b, std::move(mu)});
    f.check_upper_half_map();
    return f;
}

PickFunction PickFunction::from_resolvent(Eigen::MatrixXd matrix, Eigen::VectorXd phi) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
        throw ArgumentError("resolvent needs a square matrix");
    if (phi.size() != matrix.rows())
        throw ArgumentError("resolvent vector length must match the matrix");
    double scale = matrix.cwiseAbs().maxCoeff();
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
        throw ArgumentError("resolvent matrix must be symmetric");
    if (!(phi.norm() > 0.0)) throw ArgumentError("resolvent vector must be nonzero");
    PickFunction f(Resolvent{std::move(matrix), std::move(phi)});
    f.check_upper_half_map();
    return f;
}

PickFunction PickFunction::mobius(const std::array<double, 4>& m, PickFunction inner) {
    for (double v : m)
        if (!std::isfinite(v)) throw ArgumentError("transform coefficients must be finite");
    if (!(m[0] * m[3] - m[1] * m[2] > 0.0))
        throw ArgumentError("transform needs positive determinant to preserve the half plane");
    PickFunction f(Mobius{m, std::make_shared<PickFunction>(std::move(inner))});
    f.check_upper_half_map();
    return f;
}

PickFunction PickFunction::negative_reciprocal(PickFunction inner) {
    // -1/(-1/g) is g itself: collapse instead of stacking wrappers.
    if (const auto* nr = std::get_if<NegativeReciprocal>(&inner.form_))
        return PickFunction(*nr->inner);
    return PickFunction(
        NegativeReciprocal{std::make_shared<PickFunction>(std::move(inner))});
}

void PickFunction::check_upper_half_map() const {
    // Deterministic net over a wide stripe of the upper half plane.
    QuasiRandom2D net(0x6ac0f3d1u);
    for (std::size_t i = 0; i < 200; ++i) {
        auto [u, v] = net.point(i);
        cdouble z{16.0 * (u - 0.5), std::exp(std::log(1e-6) + v * std::log(1e7))};
        cdouble w;
        try {
            w = (*this)(z);
        } catch (const SingularityError&) {
            continue; // isolated real-type singularities do not disprove the map
        }
        if (w.imag() < -1e-12 * (1.0 + std::abs(w)))
            throw ArgumentError("constructed function does not map the upper half plane "
                                "to itself");
    }
}

// ------------------------------------------------------------------ //
// evaluation
// ------------------------------------------------------------------ //

cdouble PickFunction::operator()(cdouble z) const {
    if (!(z.imag() > 0.0)) throw DomainError("evaluation needs Im z > 0");
    return std::visit(
        [&](const auto& f) -> cdouble {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Nevanlinna>) {
                return f.a + f.b * z + f.mu.cauchy_g(z);
            } else if constexpr (std::is_same_v<T, Resolvent>) {
                return eval_resolvent(f, z);
            } else if constexpr (std::is_same_v<T, Mobius>) {
                cdouble w = (*f.inner)(z);
                cdouble den = f.m[2] * w + f.m[3];
                if (std::abs(den) < 1e-300)
                    throw SingularityError("transform denominator vanished");
                return (f.m[0] * w + f.m[1]) / den;
            } else {
                cdouble w = (*f.inner)(z);
                if (std::abs(w) < 1e-300)
                    throw SingularityError("reciprocal of a vanishing value");
                return -1.0 / w;
            }
        },
        form_);
}

std::string PickFunction::describe() const {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Nevanlinna>) return "nevanlinna-representation";
            else if constexpr (std::is_same_v<T, Resolvent>) return "matrix-resolvent";
            else if constexpr (std::is_same_v<T, Mobius>)
                return "mobius(" + f.inner->describe() + ")";
            else return "negative-reciprocal(" + f.inner->describe() + ")";
        },
        form_);
}

// ------------------------------------------------------------------ //
// spectral helpers
// ------------------------------------------------------------------ //

Eigen::MatrixXd jacobi_matrix(const std::vector<double>& diag,
                              const std::vector<double>& offdiag) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    if (n == 0) throw ArgumentError("jacobi matrix needs at least one diagonal entry");
    if (offdiag.size() + 1 != diag.size())
        throw ArgumentError("jacobi matrix needs one fewer off-diagonal entry");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = offdiag[i];
        m(i + 1, i) = offdiag[i];
    }
    return m;
}

PickFunction aronszajn_krein(PickFunction f, double alpha) {
    if (!std::isfinite(alpha)) throw ArgumentError("coupling must be finite");
    // f/(1 + alpha f) has determinant 1 regardless of alpha.
    return PickFunction::mobius({1.0, 0.0, alpha, 1.0}, std::move(f));
}

Measure rank_one_update_measure(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& phi,
                                double alpha) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
        throw ArgumentError("rank-one update needs a square matrix");
    if (phi.size() != matrix.rows())
        throw ArgumentError("rank-one update vector length must match the matrix");
    Eigen::MatrixXd updated = matrix + alpha * phi * phi.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(updated);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigenvalue decomposition failed", 0.0);

    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    double spread = std::max(1.0, vals[vals.size() - 1] - vals[0]);
    double total = phi.squaredNorm();

    std::vector<std::pair<double, double>> atoms;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        double proj = vecs.col(i).dot(phi);
        double mass = proj * proj;
        if (!atoms.empty() && vals[i] - atoms.back().first <= 1e-12 * spread) {
            // weighted merge of numerically coincident eigenvalues
            double m = atoms.back().second + mass;
            if (m > 0.0)
                atoms.back().first =
                    (atoms.back().first * atoms.back().second + vals[i] * mass) / m;
            atoms.back().second = m;
        } else {
            atoms.emplace_back(vals[i], mass);
        }
    }
    std::erase_if(atoms, [&](const auto& a) { return a.second <= 1e-14 * total; });
    if (atoms.empty()) throw ArgumentError("rank-one update produced an empty measure");
    return Measure::atomic(std::move(atoms));
}

double boundary_window_mass(const PickFunction& f, double lo, double hi, double y) {
    if (!(lo < hi)) throw ArgumentError("window needs lo < hi");
    if (!(y > 0.0)) throw ArgumentError("window height must be positive");
    auto g = [&](double x) { return f(cdouble(x, y)).imag(); };
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    return integrate(g, lo, hi, opt).value / kPi;
}

} // namespace nevlab
