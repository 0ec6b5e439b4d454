#include "bresse/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace bresse {

namespace {

constexpr int kDenseFallbackDofs = 600;
constexpr double kResonanceTol = 1e-10;

// Complex solve against a real SPD factorization, real and imaginary
// columns side by side.
ComplexMatrix llt_solve(const Eigen::LLT<Matrix>& llt, const ComplexMatrix& b) {
    Matrix parts(b.rows(), 2 * b.cols());
    parts.leftCols(b.cols()) = b.real();
    parts.rightCols(b.cols()) = b.imag();
    const Matrix sol = llt.solve(parts);
    return sol.leftCols(b.cols()) + Complex(0.0, 1.0) * sol.rightCols(b.cols());
}

// Block of first-order states, one state per column.
struct StateBlock {
    ComplexMatrix u, v;

    int cols() const { return static_cast<int>(u.cols()); }
    bool finite() const { return u.allFinite() && v.allFinite(); }
    StateBlock col(int j) const { return {u.col(j), v.col(j)}; }
};

// Shifted solves with sigma I - A reduced to the quadratic pencil
// T(sigma) = sigma^2 M + sigma C + K; one LU serves the forward and the
// adjoint direction.
class StateSolver {
public:
    StateSolver(const DiscreteOperator& op, Complex sigma) : op_(op), sigma_(sigma) {
        const ComplexMatrix T = op.stiffness().cast<Complex>() +
                                sigma * op.damping().cast<Complex>() +
                                (sigma * sigma) * op.mass().cast<Complex>();
        lu_.compute(T);
    }

    // (sigma I - A) x = (f, g) with f in rhs.u, g in rhs.v.
    StateBlock solve(const StateBlock& rhs) const {
        const ComplexMatrix b =
            op_.mass() * (rhs.v + sigma_ * rhs.u) + op_.damping() * rhs.u;
        StateBlock out;
        out.u = lu_.solve(b);
        out.v = sigma_ * out.u - rhs.u;
        return out;
    }

    // (sigma I - A)^H x = (r, s)
    StateBlock solve_adjoint(const StateBlock& rhs) const {
        const ComplexMatrix r = rhs.u.conjugate();
        const ComplexMatrix s = rhs.v.conjugate();
        const ComplexMatrix q_tilde = lu_.solve(r + sigma_ * s);
        const ComplexMatrix mq = op_.mass() * q_tilde;
        StateBlock out;
        out.v = mq.conjugate();
        out.u = (sigma_ * mq + op_.damping() * q_tilde - s).conjugate();
        return out;
    }

    // (sigma I - A) x
    StateBlock apply(const StateBlock& x) const {
        StateBlock out;
        out.u = sigma_ * x.u - x.v;
        out.v = sigma_ * x.v +
                llt_solve(op_.mass_factor(), op_.stiffness() * x.u + op_.damping() * x.v);
        return out;
    }

private:
    const DiscreteOperator& op_;
    Complex sigma_;
    Eigen::PartialPivLU<ComplexMatrix> lu_;
};

// Energy-Gram pairings <X_i, Y_j>_G.
ComplexMatrix gram(const DiscreteOperator& op, const StateBlock& x, const StateBlock& y) {
    return x.u.adjoint() * (op.stiffness() * y.u) + x.v.adjoint() * (op.mass() * y.v);
}

StateBlock g_apply(const DiscreteOperator& op, const StateBlock& x) {
    return {op.stiffness() * x.u, op.mass() * x.v};
}

StateBlock g_solve(const DiscreteOperator& op, const StateBlock& x) {
    return {llt_solve(op.stiffness_factor(), x.u), llt_solve(op.mass_factor(), x.v)};
}

StateBlock seeded_block(const DiscreteOperator& op, double lambda, int cols) {
    // Deterministic pseudo-random start derived from the probe frequency.
    const int n = op.displacement_dofs();
    std::uint64_t state = 0x9e3779b97f4a7c15ull ^ std::bit_cast<std::uint64_t>(lambda);
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return 2.0 * (static_cast<double>(state >> 11) / 9007199254740992.0) - 1.0;
    };
    StateBlock x;
    x.u.resize(n, cols);
    x.v.resize(n, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < n; ++i) {
            x.u(i, j) = Complex(next(), next());
            x.v(i, j) = Complex(next(), next());
        }
    return x;
}

Matrix dense_generator(const DiscreteOperator& op) {
    const int n = op.displacement_dofs();
    Matrix A = Matrix::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n) = Matrix::Identity(n, n);
    A.bottomLeftCorner(n, n) = -op.mass_factor().solve(op.stiffness());
    A.bottomRightCorner(n, n) = -op.mass_factor().solve(op.damping());
    return A;
}

ResolventSample sigma_min_dense(const DiscreteOperator& op, double lambda) {
    const int n = op.displacement_dofs();
    const Matrix A = dense_generator(op);
    ComplexMatrix B = -A.cast<Complex>();
    B.diagonal().array() += Complex(0.0, lambda);
    ComplexMatrix G = ComplexMatrix::Zero(2 * n, 2 * n);
    G.topLeftCorner(n, n) = op.stiffness().cast<Complex>();
    G.bottomRightCorner(n, n) = op.mass().cast<Complex>();
    const ComplexMatrix E = B.adjoint() * G * B;
    Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> solver(E, G);
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense normal-equations eigensolve failed");
    const double sigma2 = std::max(solver.eigenvalues().minCoeff(), 0.0);
    ResolventSample out;
    out.lambda = lambda;
    const double sigma = std::sqrt(sigma2);
    out.norm = sigma > 0.0 ? 1.0 / sigma : std::numeric_limits<double>::infinity();
    return out;
}

struct IterationControl {
    double tol = 1e-10;
    int max_steps = 120;
};

// Shifted inverse iteration on the normal-equations pencil
// ((iL-A)^H G (iL-A)) x = sigma^2 G x, realized as Lanczos in the G inner
// product on the inverted operator H = B^{-1} G^{-1} B^{-H} G. Krylov
// acceleration reaches the top of clustered spectra where plain power
// iteration stalls. Warm starts seed the Krylov space; resonances surface
// as non-finite solves and give sigma = 0.
ResolventSample sigma_min_iterative(const DiscreteOperator& op, double lambda,
                                    const IterationControl& ctl, const StateBlock* warm,
                                    StateBlock* carry_out) {
    const Complex sigma(0.0, lambda);
    StateSolver solver(op, sigma);
    const int n = op.displacement_dofs();
    const int dim = 2 * n;
    const int m_max = std::min(ctl.max_steps, dim);

    ResolventSample out;
    out.lambda = lambda;

    auto advance = [&](const StateBlock& from) {
        return solver.solve(g_solve(op, solver.solve_adjoint(g_apply(op, from))));
    };
    auto flatten = [n](const StateBlock& s) {
        ComplexVector q(2 * n);
        q << s.u.col(0), s.v.col(0);
        return q;
    };
    auto unflatten = [n](const ComplexVector& q) {
        return StateBlock{q.head(n), q.tail(n)};
    };

    StateBlock x0 = (warm && warm->u.rows() == n && warm->cols() >= 1)
                        ? warm->col(0)
                        : seeded_block(op, lambda, 1);

    // Lanczos basis and its G image, grown column by column.
    ComplexMatrix Q(dim, m_max);
    ComplexMatrix GQ(dim, m_max);
    std::vector<double> alpha, beta;  // tridiagonal entries

    {
        const StateBlock gx = g_apply(op, x0);
        const double nrm = std::sqrt(std::max(
            (flatten(x0).adjoint() * flatten(gx))(0, 0).real(), 1e-300));
        Q.col(0) = flatten(x0) / nrm;
        GQ.col(0) = flatten(gx) / nrm;
    }

    double theta = 0.0;
    ComplexVector ritz_weights;
    int steps = 0;
    bool converged = false;

    for (int j = 0; j < m_max && !converged; ++j) {
        steps = j + 1;
        const StateBlock zj = advance(unflatten(Q.col(j)));
        if (!zj.finite()) {
            out.norm = std::numeric_limits<double>::infinity();
            out.iterations = steps;
            if (carry_out) *carry_out = unflatten(Q.col(j));
            return out;
        }
        ComplexVector z = flatten(zj);
        const double a = (GQ.col(j).adjoint() * z)(0, 0).real();
        alpha.push_back(a);
        // Full G-reorthogonalization, two passes.
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) z -= (GQ.col(i).adjoint() * z)(0, 0) * Q.col(i);

        // Ritz estimate from the current tridiagonal matrix.
        Matrix T = Matrix::Zero(j + 1, j + 1);
        for (int i = 0; i <= j; ++i) {
            T(i, i) = alpha[i];
            if (i > 0) T(i, i - 1) = T(i - 1, i) = beta[i - 1];
        }
        Eigen::SelfAdjointEigenSolver<Matrix> tri(T);
        theta = tri.eigenvalues()(j);
        ritz_weights = tri.eigenvectors().col(j).cast<Complex>();

        const StateBlock gz = g_apply(op, unflatten(z));
        const double b = std::sqrt(std::max(
            (z.adjoint() * flatten(gz))(0, 0).real(), 0.0));
        const double ritz_residual = b * std::abs(ritz_weights(j));
        if (j >= 3 && ritz_residual <= ctl.tol * std::max(theta, 1e-300)) {
            converged = true;
            break;
        }
        if (b <= 1e-14 * std::abs(a)) {  // invariant subspace reached
            converged = true;
            break;
        }
        if (j + 1 < m_max) {
            beta.push_back(b);
            Q.col(j + 1) = z / b;
            GQ.col(j + 1) = flatten(gz) / b;
        }
    }

    const ComplexVector xr = Q.leftCols(steps) * ritz_weights.head(steps);
    const StateBlock x = unflatten(xr);
    if (carry_out) *carry_out = x;

    // Rayleigh quotient of the Ritz direction: an upper bound on sigma_min,
    // hence a conservative resolvent-norm estimate.
    const StateBlock bx = solver.apply(x);
    const double sigma_direct = std::sqrt(
        std::max(gram(op, bx, bx)(0, 0).real(), 0.0) /
        std::max(gram(op, x, x)(0, 0).real(), 1e-300));
    const double sigma_lanczos = theta > 0.0 ? 1.0 / std::sqrt(theta) : 0.0;

    out.norm = sigma_direct > 0.0 ? 1.0 / sigma_direct
                                  : std::numeric_limits<double>::infinity();
    out.residual = sigma_direct > 0.0
                       ? std::abs(sigma_direct - sigma_lanczos) / sigma_direct
                       : 0.0;
    out.iterations = steps;
    return out;
}

ResolventSample sigma_min_impl(const DiscreteOperator& op, double lambda,
                               ResolventMethod method) {
    if (method == ResolventMethod::Dense) return sigma_min_dense(op, lambda);
    IterationControl ctl;
    ResolventSample sample = sigma_min_iterative(op, lambda, ctl, nullptr, nullptr);
    const bool fishy = !std::isfinite(sample.norm) || sample.residual > 1e-6;
    if (method == ResolventMethod::Auto && fishy && op.state_dim() < kDenseFallbackDofs)
        return sigma_min_dense(op, lambda);
    return sample;
}

double sigma_of(const ResolventSample& s) {
    return std::isfinite(s.norm) ? 1.0 / s.norm : 0.0;
}

}  // namespace

double frequency_cap(const DiscreteOperator& op) {
    const auto& cfg = op.config();
    return kPi * wave_speeds(cfg.params).min() * cfg.run.n_elements /
           (8.0 * cfg.params.length);
}

std::vector<Complex> eigenvalues(const DiscreteOperator& op) {
    if (op.state_dim() > 3000)
        throw ConfigError("dense eigenvalue solve refused above 3000 state dofs; "
                          "use eigenvalues_near with a shift");
    const Matrix A = dense_generator(op);
    Eigen::EigenSolver<Matrix> solver(A, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense eigensolver failed to converge");
    std::vector<Complex> eigs(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return eigs;
}

std::vector<Complex> eigenvalues_near(const DiscreteOperator& op, Complex shift, int k,
                                      int krylov_dim) {
    const int dim = op.state_dim();
    if (k < 1) throw std::invalid_argument("eigenvalues_near: need k >= 1");
    int m = krylov_dim > 0 ? krylov_dim : std::min(dim, std::max(2 * k + 16, 32));
    m = std::min(m, dim);

    StateSolver solver(op, shift);
    const int n = op.displacement_dofs();

    // Arnoldi on (shift - A)^{-1} in the Euclidean inner product.
    std::vector<ComplexVector> basis;
    basis.reserve(m + 1);
    ComplexVector q(2 * n);
    {
        const StateBlock s0 = seeded_block(op, std::abs(shift), 1);
        q << s0.u.col(0), s0.v.col(0);
        q.normalize();
    }
    basis.push_back(q);
    ComplexMatrix H = ComplexMatrix::Zero(m + 1, m);

    int built = m;
    for (int j = 0; j < m; ++j) {
        const StateBlock xj{basis[j].head(n), basis[j].tail(n)};
        const StateBlock yj = solver.solve(xj);
        if (!yj.finite())
            throw NumericalError("shift-invert solve broke down at shift " +
                                 std::to_string(shift.real()) + "+" +
                                 std::to_string(shift.imag()) + "i");
        ComplexVector w(2 * n);
        w << yj.u.col(0), yj.v.col(0);
        for (int i = 0; i <= j; ++i) {
            H(i, j) = basis[i].adjoint() * w;
            w -= H(i, j) * basis[i];
        }
        for (int i = 0; i <= j; ++i) {  // one re-orthogonalization pass
            const Complex c = basis[i].adjoint() * w;
            H(i, j) += c;
            w -= c * basis[i];
        }
        H(j + 1, j) = w.norm();
        if (std::abs(H(j + 1, j)) < 1e-14) {
            built = j + 1;
            break;
        }
        w /= H(j + 1, j);
        basis.push_back(w);
    }

    Eigen::ComplexEigenSolver<ComplexMatrix> ritz(H.topLeftCorner(built, built));
    if (ritz.info() != Eigen::Success)
        throw NumericalError("Arnoldi Ritz eigensolve failed at shift " +
                             std::to_string(shift.real()));
    struct Pair {
        Complex theta;
        double residual;
    };
    std::vector<Pair> pairs;
    const double h_last = built < m + 1 ? std::abs(H(built, built - 1)) : 0.0;
    for (int i = 0; i < built; ++i)
        pairs.push_back({ritz.eigenvalues()[i],
                         h_last * std::abs(ritz.eigenvectors()(built - 1, i))});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::abs(a.theta) > std::abs(b.theta);
    });

    std::vector<Complex> out;
    for (const auto& pr : pairs) {
        if (static_cast<int>(out.size()) == k) break;
        if (std::abs(pr.theta) < 1e-14) continue;
        if (pr.residual > 1e-6 * std::abs(pr.theta)) {
            std::ostringstream oss;
            oss << "shift-invert eigensolver did not converge at shift " << shift.real()
                << "+" << shift.imag() << "i (residual " << pr.residual << ")";
            throw NumericalError(oss.str());
        }
        out.push_back(shift - 1.0 / pr.theta);
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return out;
}

double sigma_min(const DiscreteOperator& op, double lambda, ResolventMethod method) {
    return sigma_of(sigma_min_impl(op, lambda, method));
}

ResolventSample resolvent_norm(const DiscreteOperator& op, double lambda,
                               ResolventMethod method) {
    ResolventSample s = sigma_min_impl(op, lambda, method);
    const double sigma = sigma_of(s);
    if (!(sigma > kResonanceTol * std::max(1.0, std::abs(lambda)))) {
        std::ostringstream oss;
        oss << "i*lambda with lambda=" << lambda
            << " is within resolution of an eigenvalue (sigma_min=" << sigma << ")";
        throw ResonanceError(oss.str(), lambda);
    }
    return s;
}

std::vector<ResolventSample> resolvent_sweep(const DiscreteOperator& op, double lambda_min,
                                             double lambda_max, int n_samples,
                                             SweepSpacing spacing, int n_threads) {
    if (!(0.0 < lambda_min && lambda_min < lambda_max))
        throw ConfigError("sweep needs 0 < lambda_min < lambda_max");
    const double cap = frequency_cap(op);
    if (lambda_max > cap * (1.0 + 1e-12)) {
        std::ostringstream oss;
        const int n_suggest = static_cast<int>(std::ceil(
            8.0 * op.config().params.length * lambda_max /
            (kPi * wave_speeds(op.config().params).min())));
        oss << "lambda_max=" << lambda_max << " exceeds the resolved-frequency cap "
            << cap << " for N=" << op.config().run.n_elements
            << "; refine to N>=" << n_suggest << " or lower the range";
        throw ConfigError(oss.str());
    }
    if (n_samples < 2) throw ConfigError("sweep needs at least two samples");

    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        grid[i] = spacing == SweepSpacing::Log
                      ? lambda_min * std::pow(lambda_max / lambda_min, t)
                      : lambda_min + t * (lambda_max - lambda_min);
    }

    std::vector<ResolventSample> out(n_samples);
    std::vector<std::string> errors(n_samples);
    std::atomic<int> cursor{0};
    auto work = [&]() {
        for (;;) {
            const int i = cursor.fetch_add(1);
            if (i >= n_samples) return;
            try {
                out[i] = resolvent_norm(op, grid[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int workers = std::max(1, std::min(n_threads, n_samples));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (int i = 0; i < n_samples; ++i) {
        if (!errors[i].empty())
            throw ResonanceError("sweep aborted at lambda=" + std::to_string(grid[i]) +
                                     ": " + errors[i],
                                 grid[i]);
    }
    return out;
}

std::string to_string(StabilityClass::Kind kind) {
    switch (kind) {
        case StabilityClass::Kind::Analytic: return "analytic";
        case StabilityClass::Kind::Exponential: return "exponential";
        case StabilityClass::Kind::Polynomial: return "polynomial";
        case StabilityClass::Kind::Unknown: return "unknown";
    }
    return "unknown";
}

std::string StabilityClass::describe() const {
    std::ostringstream oss;
    oss << "class=" << to_string(kind) << " slope=" << slope << " r2=" << r_squared
        << " window=[" << window_lo << "," << window_hi << "]";
    if (kind == Kind::Polynomial)
        oss << " predicted_energy_decay=t^(-" << energy_decay_exponent << ")";
    if (kind == Kind::Analytic) oss << " predicted_energy_decay=exponential(analytic)";
    if (kind == Kind::Exponential) oss << " predicted_energy_decay=exponential";
    return oss.str();
}

StabilityClass classify_decay(const std::vector<ResolventSample>& sweep) {
    std::vector<ResolventSample> samples;
    for (const auto& s : sweep)
        if (s.lambda > 0.0 && std::isfinite(s.norm) && s.norm > 0.0) samples.push_back(s);
    std::sort(samples.begin(), samples.end(),
              [](const ResolventSample& a, const ResolventSample& b) {
                  return a.lambda < b.lambda;
              });
    if (samples.size() < 8)
        throw ConfigError("classification needs at least 8 usable sweep samples");
    const double decades = std::log10(samples.back().lambda / samples.front().lambda);
    if (decades < 1.5 - 1e-9)
        throw ConfigError("classification needs a sweep spanning at least 1.5 decades");

    const double hi = samples.back().lambda;
    const double lo = hi / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (const auto& s : samples) {
        if (s.lambda < lo * (1.0 - 1e-12)) continue;
        const double x = std::log(s.lambda);
        const double y = std::log(s.norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    if (n < 2) throw ConfigError("classification window ended up with fewer than 2 samples");
    const double det = n * sxx - sx * sx;
    StabilityClass cls;
    cls.window_lo = lo;
    cls.window_hi = hi;
    cls.slope = (n * sxy - sx * sy) / det;
    const double ss_tot = syy - sy * sy / n;
    const double ss_res = ss_tot - cls.slope * (sxy - sx * sy / n);
    cls.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

    if (cls.slope <= -0.7) {
        cls.kind = StabilityClass::Kind::Analytic;
    } else if (std::abs(cls.slope) <= 0.3) {
        cls.kind = StabilityClass::Kind::Exponential;
    } else if (cls.slope >= 0.7) {
        cls.kind = StabilityClass::Kind::Polynomial;
        cls.energy_decay_exponent = 2.0 / cls.slope;
    } else {
        cls.kind = StabilityClass::Kind::Unknown;
    }
    return cls;
}

Clearance imaginary_axis_clearance(const DiscreteOperator& op,
                                   const std::vector<double>& lambda_grid) {
    if (lambda_grid.empty()) throw std::invalid_argument("clearance needs a nonempty grid");
    // sigma_min(lambda) = sigma_min(-lambda) for the real-coefficient beam
    // (conjugation symmetry), so each |lambda| is computed once. A looser
    // tolerance than the resolvent path: the minimum is what matters here.
    IterationControl ctl;
    ctl.tol = 1e-7;
    Clearance best{std::numeric_limits<double>::infinity(), lambda_grid.front()};
    std::map<double, double> memo;
    StateBlock carry;
    for (double lambda : lambda_grid) {
        const double key = std::abs(lambda);
        double sigma;
        auto it = memo.find(key);
        if (it != memo.end()) {
            sigma = it->second;
        } else {
            StateBlock next;
            const ResolventSample s = sigma_min_iterative(
                op, key, ctl, carry.u.size() ? &carry : nullptr, &next);
            carry = std::move(next);
            sigma = sigma_of(s);
            memo.emplace(key, sigma);
        }
        if (sigma < best.value) best = {sigma, lambda};
    }
    return best;
}

}  // namespace bresse
