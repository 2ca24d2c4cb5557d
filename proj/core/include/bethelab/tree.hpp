#ifndef BETHELAB_TREE_HPP
#define BETHELAB_TREE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace bethe {

// Vertex of the rooted half-tree: the root has two children, every other
// vertex has one parent and two children.  The address is the path from the
// root, one bit per step (bit i = choice at level i, LSB first).
struct VertexAddress {
    int depth = 0;
    std::uint64_t bits = 0;

    VertexAddress() = default;
    VertexAddress(int d, std::uint64_t b) : depth(d), bits(b) {}

    static VertexAddress root() { return {}; }

    VertexAddress child(int which) const {  // which in {0,1}
        return {depth + 1, bits | (static_cast<std::uint64_t>(which & 1) << depth)};
    }
    // Address relative to the depth-1 subtree it belongs to (drops step 0).
    VertexAddress drop_first_step() const { return {depth - 1, bits >> 1}; }
    int first_step() const { return static_cast<int>(bits & 1u); }

    bool is_prefix_of(const VertexAddress& other) const {
        if (depth > other.depth) return false;
        std::uint64_t mask = (depth >= 64) ? ~0ULL : ((1ULL << depth) - 1);
        return (other.bits & mask) == bits;
    }

    // Breadth-first index: root 0, children of i are 2i+1 and 2i+2.
    std::uint64_t bfs_index() const {
        std::uint64_t idx = 0;
        for (int k = 0; k < depth; ++k) idx = 2 * idx + 1 + ((bits >> k) & 1u);
        return idx;
    }

    bool operator==(const VertexAddress& o) const { return depth == o.depth && bits == o.bits; }
    bool operator<(const VertexAddress& o) const {
        return depth != o.depth ? depth < o.depth : bits < o.bits;
    }

    std::string to_string() const;                      // "" for the root, else e.g. "010"
    static VertexAddress parse(const std::string& s);   // throws std::invalid_argument
};

enum class PotentialKind { FiniteTable, Symmetric, SeededRandom };

// Real potential on the half-tree.  All shipped kinds have finite support;
// unbounded model potentials are handled by truncating first.
class TreePotential {
public:
    TreePotential() = default;  // identically zero

    static TreePotential finite_table(const std::vector<std::pair<VertexAddress, double>>& entries);
    // V(x) = by_level[|x|], zero beyond the end of the sequence.
    static TreePotential symmetric(const std::vector<double>& by_level);
    // V(x) = envelope[|x|] * u, u ~ Uniform(-1,1) from mt19937_64(seed),
    // drawn in breadth-first vertex order.
    static TreePotential seeded_random(std::uint64_t seed, const std::vector<double>& envelope);

    double value(const VertexAddress& x) const;
    double value_at_root() const { return value(VertexAddress::root()); }

    PotentialKind kind() const { return kind_; }
    // Largest depth carrying a nonzero value; -1 for the zero potential.
    int support_radius() const { return support_radius_; }
    double sup_norm() const { return sup_norm_; }
    bool is_zero() const { return support_radius_ < 0; }

    // True iff some vertex at or below x carries a nonzero value.
    bool subtree_has_support(const VertexAddress& x) const;

    // Potential seen by the subtree rooted at child O_1 (which=1) or O_2 (which=2).
    TreePotential branch(int which) const;

    bool has_seed() const { return has_seed_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& envelope() const { return envelope_; }
    const std::vector<double>& symmetric_levels() const { return levels_; }
    // Table entries in breadth-first order (includes explicit zeros for table kinds).
    std::vector<std::pair<VertexAddress, double>> entries() const;

    std::string describe() const;

private:
    void index_support();

    PotentialKind kind_ = PotentialKind::FiniteTable;
    std::map<VertexAddress, double> table_;   // FiniteTable / SeededRandom
    std::vector<double> levels_;              // Symmetric
    int support_radius_ = -1;
    double sup_norm_ = 0.0;
    std::unordered_set<std::uint64_t> support_closure_;  // bfs indices of prefixes of support
    bool has_seed_ = false;
    std::uint64_t seed_ = 0;
    std::vector<double> envelope_;
};

struct WeightedNorm {
    double value = 0.0;
    int depth_evaluated = 0;
};

// sum_{n<=depth} 2^-n sum_{|x|=n} V^2(x), evaluated exactly.
WeightedNorm weighted_l2(const TreePotential& v, int depth);

// Restriction to the ball |x| <= k; result is a finite table.
TreePotential truncate(const TreePotential& v, int k);

} // namespace bethe

#endif
