#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "shapefn/error.hpp"
#include "shapefn/inradius.hpp"
#include "shapefn/mesh.hpp"

namespace shapefn {

struct FemOptions {
    /// Relative tolerance for the linear solves and the eigenvalue iteration; in [1e-8, 1e-2].
    double tol = 1e-6;
    /// Triangle budget of the finest level; the coarse level has a quarter of it.
    std::size_t max_triangles = 80000;
};

/// A two-level extrapolated quantity.
struct FemEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    double coarse = 0.0;
    double fine = 0.0;
    std::size_t triangles = 0; // on the fine level
    double mesh_size = 0.0;    // max edge length on the fine level
};

struct FunctionalValues {
    FemEstimate torsion;
    FemEstimate lambda;
};

/// P1 stiffness and consistent mass restricted to interior nodes, plus the load for f = 1.
struct P1System {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> mass;
    Eigen::VectorXd load;
    std::vector<int> dof; // node -> interior index, -1 on the boundary
    std::size_t n_nodes = 0;

    explicit P1System(const TriangleMesh& m) : n_nodes(m.nodes.size()) {
        dof.assign(m.nodes.size(), -1);
        int n = 0;
        for (std::size_t k = 0; k < m.nodes.size(); ++k)
            if (!m.boundary[k])
                dof[k] = n++;
        if (n == 0)
            throw Error("degenerate polygon", "mesh without interior nodes");
        load = Eigen::VectorXd::Zero(n);
        std::vector<Eigen::Triplet<double>> kt, mt;
        kt.reserve(9 * m.triangles.size());
        mt.reserve(9 * m.triangles.size());
        for (std::size_t t = 0; t < m.triangles.size(); ++t) {
            const auto& tr = m.triangles[t];
            const double a = m.triangle_area(t);
            Vec2 e[3];
            for (int i = 0; i < 3; ++i)
                e[i] = m.nodes[tr[(i + 2) % 3]] - m.nodes[tr[(i + 1) % 3]];
            for (int i = 0; i < 3; ++i) {
                const int di = dof[tr[i]];
                if (di < 0)
                    continue;
                load[di] += a / 3.0;
                for (int j = 0; j < 3; ++j) {
                    const int dj = dof[tr[j]];
                    if (dj < 0)
                        continue;
                    kt.emplace_back(di, dj, dot(e[i], e[j]) / (4.0 * a));
                    mt.emplace_back(di, dj, a / 12.0 * (i == j ? 2.0 : 1.0));
                }
            }
        }
        stiffness.resize(n, n);
        stiffness.setFromTriplets(kt.begin(), kt.end());
        mass.resize(n, n);
        mass.setFromTriplets(mt.begin(), mt.end());
    }

    Eigen::Index size() const { return load.size(); }

    /// Nodal vector (zero on the boundary) from interior values.
    std::vector<double> to_nodes(const Eigen::VectorXd& x) const {
        std::vector<double> out(n_nodes, 0.0);
        for (std::size_t k = 0; k < n_nodes; ++k)
            if (dof[k] >= 0)
                out[k] = x[dof[k]];
        return out;
    }

    Eigen::VectorXd from_nodes(const std::vector<double>& v) const {
        Eigen::VectorXd x(size());
        for (std::size_t k = 0; k < n_nodes; ++k)
            if (dof[k] >= 0)
                x[dof[k]] = v[k];
        return x;
    }
};

namespace detail {

inline void check_tol(double tol) {
    if (!(tol >= 1e-8 && tol <= 1e-2))
        throw std::invalid_argument("tol must lie in [1e-8, 1e-2]");
}

using Pcg = Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                     Eigen::DiagonalPreconditioner<double>>;

inline Eigen::VectorXd pcg_solve(Pcg& cg, const Eigen::VectorXd& rhs, const Eigen::VectorXd& guess,
                                 const char* code) {
    Eigen::VectorXd x = cg.solveWithGuess(rhs, guess);
    if (cg.info() != Eigen::Success)
        throw Error(code, "no convergence after " + std::to_string(cg.iterations()) + " iterations");
    return x;
}

inline std::vector<double> prolong(const std::vector<double>& coarse,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& parents) {
    std::vector<double> fine(coarse);
    fine.reserve(coarse.size() + parents.size());
    for (const auto& [a, b] : parents)
        fine.push_back(0.5 * (coarse[a] + coarse[b]));
    return fine;
}

struct TorsionSolution {
    double torsion;
    Eigen::VectorXd u;
};

inline TorsionSolution torsion_on(const P1System& sys, double tol) {
    Pcg cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(100000);
    cg.compute(sys.stiffness);
    const Eigen::VectorXd u = pcg_solve(cg, sys.load, Eigen::VectorXd::Zero(sys.size()), "cg_divergence");
    return {sys.load.dot(u), u};
}

struct EigenSolution {
    double lambda;
    Eigen::VectorXd x;
};

/// Inverse iteration shifted by sigma, which must lie below the smallest discrete eigenvalue.
inline EigenSolution lambda_on(const P1System& sys, double sigma, double tol, Eigen::VectorXd x) {
    const Eigen::SparseMatrix<double> shifted = sys.stiffness - sigma * sys.mass;
    Pcg cg;
    cg.setTolerance(std::max(1e-12, 0.1 * tol));
    cg.setMaxIterations(100000);
    cg.compute(shifted);
    auto rayleigh = [&](const Eigen::VectorXd& v) { return v.dot(sys.stiffness * v) / v.dot(sys.mass * v); };
    double rho = rayleigh(x);
    for (int it = 1; it <= 500; ++it) {
        const Eigen::VectorXd mx = sys.mass * x;
        const Eigen::VectorXd guess = x / std::max(rho - sigma, 1e-300);
        Eigen::VectorXd y = pcg_solve(cg, mx, guess, "eig_divergence");
        y /= std::sqrt(y.dot(sys.mass * y));
        const double next = rayleigh(y);
        x = std::move(y);
        const bool settled = std::abs(next - rho) < tol * next;
        rho = next;
        if (it >= 3 && settled)
            return {rho, x};
    }
    throw Error("eig_divergence", "inverse iteration did not settle within 500 steps");
}

inline FemEstimate extrapolate(double coarse, double fine, const TriangleMesh& m) {
    FemEstimate e;
    e.coarse = coarse;
    e.fine = fine;
    e.value = fine + (fine - coarse) / 3.0;
    e.error_estimate = std::abs(fine - coarse) / 3.0;
    e.triangles = m.triangles.size();
    e.mesh_size = m.max_edge_length();
    return e;
}

} // namespace detail

/// Coarse and fine meshes of the two-level solve; the fine one is a uniform refinement.
struct MeshPair {
    TriangleMesh coarse;
    Refinement fine;
};

inline MeshPair mesh_pair(const ConvexPolygon& poly, const FemOptions& opts = {}) {
    TriangleMesh coarse = base_mesh(poly, base_spacing(poly));
    while (16 * coarse.triangles.size() <= opts.max_triangles)
        coarse = refine(coarse).mesh;
    Refinement fine = refine(coarse);
    return {std::move(coarse), std::move(fine)};
}

/// Torsion and first eigenvalue sharing one mesh pair.
inline FunctionalValues solve_functionals(const ConvexPolygon& poly, const FemOptions& opts = {}) {
    detail::check_tol(opts.tol);
    const MeshPair mp = mesh_pair(poly, opts);
    const P1System coarse(mp.coarse);
    const P1System fine(mp.fine.mesh);

    const auto tc = detail::torsion_on(coarse, opts.tol);
    const auto tf = detail::torsion_on(fine, opts.tol);

    // Hersch-Protter: pi^2/(4R^2) is below the continuum and hence every conforming eigenvalue
    const double r = inradius(poly);
    const double sigma = (1.0 - 1e-6) * std::numbers::pi * std::numbers::pi / (4.0 * r * r);
    const auto lc = detail::lambda_on(coarse, sigma, opts.tol, tc.u);
    const auto start = fine.from_nodes(detail::prolong(coarse.to_nodes(lc.x), mp.fine.parents));
    const auto lf = detail::lambda_on(fine, sigma, opts.tol, start);

    return {detail::extrapolate(tc.torsion, tf.torsion, mp.fine.mesh),
            detail::extrapolate(lc.lambda, lf.lambda, mp.fine.mesh)};
}

inline FemEstimate solve_torsion(const ConvexPolygon& poly, double tol, const FemOptions& base = {}) {
    FemOptions opts = base;
    opts.tol = tol;
    detail::check_tol(tol);
    const MeshPair mp = mesh_pair(poly, opts);
    const auto tc = detail::torsion_on(P1System(mp.coarse), tol);
    const auto tf = detail::torsion_on(P1System(mp.fine.mesh), tol);
    return detail::extrapolate(tc.torsion, tf.torsion, mp.fine.mesh);
}

inline FemEstimate solve_lambda1(const ConvexPolygon& poly, double tol, const FemOptions& base = {}) {
    FemOptions opts = base;
    opts.tol = tol;
    return solve_functionals(poly, opts).lambda;
}

/// Torsional rigidity of the rectangle [0,a] x [0,b] by its Fourier series.
inline double closed_form_rectangle_torsion(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("closed_form_rectangle_torsion: sides must be positive");
    if (a > b)
        std::swap(a, b);
    const double pi = std::numbers::pi;
    double sum = 0.0;
    for (int k = 1;; k += 2) {
        const double term = std::tanh(k * pi * b / (2.0 * a)) / std::pow(k, 5);
        sum += term;
        if (term < 1e-15 * sum)
            break;
    }
    return 0.25 * (a * a * a * b / 3.0 - 64.0 * std::pow(a, 4) / std::pow(pi, 5) * sum);
}

} // namespace shapefn
