#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cvspin/fock.hpp"

namespace cvspin {

namespace detail {

/// Union-find over the symmetrized sparsity pattern of m. Basis indices that
/// never couple end up in separate components, so exp(m) can be assembled
/// from much smaller dense blocks. The pair-creation generator a^dag b^dag -
/// a b conserves n_a - n_b, which caps its block sizes at dim per mode.
inline std::vector<std::vector<int>> sparsity_components(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](int i, int j) {
        i = find(i);
        j = find(j);
        if (i != j) parent[i] = j;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m(i, j) != 0.0 || m(j, i) != 0.0) unite(i, j);

    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> components;
    for (auto& g : groups)
        if (!g.empty()) components.push_back(std::move(g));
    return components;
}

/// Scaling-and-squaring Taylor evaluation of exp(b) for a dense block.
/// The series is summed until the term's 1-norm drops below tol times the
/// accumulated 1-norm; failure to get there within max_terms throws.
inline Matrix expm_dense(Matrix b, double tol, int max_terms) {
    const int n = static_cast<int>(b.rows());
    const double norm = b.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        if (squarings > 60)
            throw std::runtime_error("matrix exponential: operator norm too large to scale");
        b /= std::pow(2.0, squarings);
    }

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    bool converged = false;
    for (int k = 1; k <= max_terms; ++k) {
        term = (term * b) / static_cast<double>(k);
        result += term;
        const double term_norm = term.cwiseAbs().colwise().sum().maxCoeff();
        const double result_norm = result.cwiseAbs().colwise().sum().maxCoeff();
        if (term_norm <= tol * result_norm) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("matrix exponential: Taylor series did not converge within " +
                                 std::to_string(max_terms) + " terms");

    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

}  // namespace detail

/// exp(scale * op), computed per sparsity-connected block with a
/// scaling-and-squaring Taylor series at relative tolerance 1e-13.
inline FockOperator operator_exponential(const FockOperator& op, cxd scale = 1.0,
                                         double series_tol = 1e-13, int max_terms = 96) {
    const Matrix scaled = scale * op.mat;
    const auto components = detail::sparsity_components(scaled);
    Matrix out = Matrix::Identity(op.dim(), op.dim());
    for (const auto& idx : components) {
        if (idx.size() == 1) {
            out(idx[0], idx[0]) = std::exp(scaled(idx[0], idx[0]));
            continue;
        }
        const int b = static_cast<int>(idx.size());
        Matrix block(b, b);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) block(i, j) = scaled(idx[i], idx[j]);
        const Matrix eblock = detail::expm_dense(std::move(block), series_tol, max_terms);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) out(idx[i], idx[j]) = eblock(i, j);
    }
    return {op.cutoff, op.arity, std::move(out)};
}

}  // namespace cvspin
