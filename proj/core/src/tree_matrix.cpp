#include "bethelab/tree_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bethelab/errors.hpp"

namespace bethe {

namespace {

// Potential value by breadth-first index, walking the address back from the index.
VertexAddress address_from_bfs(std::uint64_t idx) {
    // invert idx = 2*idx' + 1 + step
    std::vector<int> steps;
    while (idx != 0) {
        int step = static_cast<int>((idx - 1) & 1u);
        steps.push_back(step);
        idx = (idx - 1) / 2;
    }
    VertexAddress a;
    a.depth = static_cast<int>(steps.size());
    for (int k = 0; k < a.depth; ++k)
        if (steps[a.depth - 1 - k]) a.bits |= (1ULL << k);
    return a;
}

} // namespace

Eigen::MatrixXd finite_tree_matrix(const TreePotential& v, int depth, std::size_t max_bytes) {
    if (depth < 0) throw std::invalid_argument("finite_tree_matrix: depth must be >= 0");
    if (depth >= 60) throw ResourceError("finite_tree_matrix: depth too large");
    const std::uint64_t n = (1ULL << (depth + 1)) - 1;
    if (n * n * sizeof(double) > max_bytes)
        throw ResourceError("finite_tree_matrix: dense matrix of dimension " + std::to_string(n) +
                            " exceeds the memory budget");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        H(i, i) = v.value(address_from_bfs(i));
        const std::uint64_t c1 = 2 * i + 1, c2 = 2 * i + 2;
        if (c1 < n) H(i, c1) = H(c1, i) = 1.0;
        if (c2 < n) H(i, c2) = H(c2, i) = 1.0;
    }
    return H;
}

std::complex<double> tree_resolvent_root(const TreePotential& v, int depth,
                                         std::complex<double> lambda) {
    if (depth < 0) throw std::invalid_argument("tree_resolvent_root: depth must be >= 0");
    const int R = std::max(0, std::min(v.support_radius(), depth));
    if (R >= 24) throw ResourceError("tree_resolvent_root: support radius too large");
    const long n_explicit = (1L << (R + 1)) - 1;
    const long tail = depth - R;  // chain sites per depth-R vertex
    const long n = n_explicit + (1L << R) * tail;
    if (static_cast<std::uint64_t>(n) * n * sizeof(std::complex<double>) > (std::size_t(1) << 31))
        throw ResourceError("tree_resolvent_root: compressed system too large");

    // Explicit vertices down to depth R keep the tree couplings; below that every
    // subtree is free and its radially symmetric part is a chain with hopping
    // sqrt(2), which is all the root resolvent entry can see.
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (long i = 0; i < n_explicit; ++i) {
        A(i, i) = v.value(address_from_bfs(static_cast<std::uint64_t>(i))) - lambda;
        const long c1 = 2 * i + 1, c2 = 2 * i + 2;
        if (c1 < n_explicit) A(i, c1) = A(c1, i) = 1.0;
        if (c2 < n_explicit) A(i, c2) = A(c2, i) = 1.0;
    }
    const double rt2 = std::sqrt(2.0);
    for (long k = 0; k < (1L << R); ++k) {
        long prev = (1L << R) - 1 + k;  // depth-R vertex in bfs order
        for (long t = 0; t < tail; ++t) {
            const long cur = n_explicit + k * tail + t;
            A(cur, cur) = -lambda;
            A(prev, cur) = A(cur, prev) = rt2;
            prev = cur;
        }
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(0) = 1.0;
    Eigen::VectorXcd x = A.partialPivLu().solve(rhs);
    return x(0);
}

long count_eigenvalues_below(const TreePotential& v, int depth, double sigma) {
    if (depth < 0 || depth > 56) throw ResourceError("count_eigenvalues_below: depth out of range");
    // Leaf-to-root elimination of H - sigma has no fill-in on a tree; the signs
    // of the pivots give the inertia.  Below the potential support all
    // subtrees at a level share one pivot value, so those levels are counted
    // in bulk and only the supported ball is walked vertex by vertex.
    const int R = std::min(v.support_radius(), depth);
    if (R > 24) throw ResourceError("count_eigenvalues_below: support radius too large");
    std::vector<double> dfree(static_cast<std::size_t>(depth) + 2, 0.0);
    long negatives = 0;
    for (int l = depth; l > R; --l) {
        double d = -sigma - (l == depth ? 0.0 : 2.0 / dfree[l + 1]);
        if (d == 0.0) d = -1e-300;  // sigma hit an eigenvalue of a submatrix exactly
        dfree[l] = d;
        if (d < 0.0) negatives += 1L << l;
    }
    if (R < 0) return negatives;
    const std::uint64_t n_exp = (1ULL << (R + 1)) - 1;
    std::vector<double> pivot(n_exp);
    for (std::uint64_t i = n_exp; i-- > 0;) {
        double d = v.value(address_from_bfs(i)) - sigma;
        const std::uint64_t c1 = 2 * i + 1, c2 = 2 * i + 2;
        if (c1 < n_exp) {
            d -= 1.0 / pivot[c1] + 1.0 / pivot[c2];
        } else if (depth > R) {
            d -= 2.0 / dfree[R + 1];  // both children root free subtrees
        }
        if (d == 0.0) d = -1e-300;
        pivot[i] = d;
        if (d < 0.0) ++negatives;
    }
    return negatives;
}

} // namespace bethe
