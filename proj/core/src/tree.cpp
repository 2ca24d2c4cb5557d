#include "bethelab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bethelab/errors.hpp"

namespace bethe {

std::string VertexAddress::to_string() const {
    std::string s;
    s.reserve(depth);
    for (int k = 0; k < depth; ++k) s.push_back(((bits >> k) & 1u) ? '1' : '0');
    return s;
}

VertexAddress VertexAddress::parse(const std::string& s) {
    if (s.size() >= 60) throw std::invalid_argument("vertex address too deep: " + s);
    VertexAddress a;
    a.depth = static_cast<int>(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '1')
            a.bits |= (1ULL << k);
        else if (s[k] != '0')
            throw std::invalid_argument("vertex address must be a string of 0/1: " + s);
    }
    return a;
}

void TreePotential::index_support() {
    support_radius_ = -1;
    sup_norm_ = 0.0;
    support_closure_.clear();
    if (kind_ == PotentialKind::Symmetric) {
        for (std::size_t n = 0; n < levels_.size(); ++n) {
            if (levels_[n] != 0.0) support_radius_ = static_cast<int>(n);
            sup_norm_ = std::max(sup_norm_, std::abs(levels_[n]));
        }
        return;
    }
    for (const auto& [addr, val] : table_) {
        if (val == 0.0) continue;
        support_radius_ = std::max(support_radius_, addr.depth);
        sup_norm_ = std::max(sup_norm_, std::abs(val));
        VertexAddress p = addr;
        while (true) {
            auto [it, inserted] = support_closure_.insert(p.bfs_index());
            if (!inserted || p.depth == 0) break;
            p = {p.depth - 1, p.bits & ((1ULL << (p.depth - 1)) - 1)};
        }
    }
}

TreePotential TreePotential::finite_table(
    const std::vector<std::pair<VertexAddress, double>>& entries) {
    TreePotential v;
    v.kind_ = PotentialKind::FiniteTable;
    for (const auto& [addr, val] : entries) v.table_[addr] = val;
    v.index_support();
    return v;
}

TreePotential TreePotential::symmetric(const std::vector<double>& by_level) {
    TreePotential v;
    v.kind_ = PotentialKind::Symmetric;
    v.levels_ = by_level;
    v.index_support();
    return v;
}

TreePotential TreePotential::seeded_random(std::uint64_t seed,
                                           const std::vector<double>& envelope) {
    if (envelope.size() > 24)
        throw ResourceError("seeded_random: envelope depth > 24 would enumerate 2^25 vertices");
    TreePotential v;
    v.kind_ = PotentialKind::SeededRandom;
    v.has_seed_ = true;
    v.seed_ = seed;
    v.envelope_ = envelope;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int n = 0; n < static_cast<int>(envelope.size()); ++n) {
        for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
            // breadth-first: level by level, bits in bfs order within the level
            std::uint64_t bits = 0;
            for (int k = 0; k < n; ++k)  // bfs order sorts by path read root-first
                bits |= (((b >> (n - 1 - k)) & 1u) << k);
            v.table_[VertexAddress(n, bits)] = envelope[n] * unit(rng);
        }
    }
    v.index_support();
    return v;
}

double TreePotential::value(const VertexAddress& x) const {
    if (kind_ == PotentialKind::Symmetric) {
        if (x.depth < static_cast<int>(levels_.size())) return levels_[x.depth];
        return 0.0;
    }
    auto it = table_.find(x);
    return it == table_.end() ? 0.0 : it->second;
}

bool TreePotential::subtree_has_support(const VertexAddress& x) const {
    if (x.depth > support_radius_) return false;
    if (kind_ == PotentialKind::Symmetric) return true;  // depth <= radius suffices
    return support_closure_.count(x.bfs_index()) > 0;
}

TreePotential TreePotential::branch(int which) const {
    if (which != 1 && which != 2) throw std::invalid_argument("branch index must be 1 or 2");
    if (kind_ == PotentialKind::Symmetric) {
        std::vector<double> shifted(levels_.begin() + std::min<std::size_t>(1, levels_.size()),
                                    levels_.end());
        return symmetric(shifted);
    }
    std::vector<std::pair<VertexAddress, double>> sub;
    for (const auto& [addr, val] : table_) {
        if (addr.depth >= 1 && addr.first_step() == which - 1)
            sub.emplace_back(addr.drop_first_step(), val);
    }
    return finite_table(sub);
}

std::vector<std::pair<VertexAddress, double>> TreePotential::entries() const {
    std::vector<std::pair<VertexAddress, double>> out(table_.begin(), table_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first.bfs_index() < b.first.bfs_index();
    });
    return out;
}

std::string TreePotential::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case PotentialKind::FiniteTable:
            os << "finite_table(" << table_.size() << " entries, radius " << support_radius_
               << ", sup " << sup_norm_ << ")";
            break;
        case PotentialKind::Symmetric:
            os << "symmetric(" << levels_.size() << " levels, sup " << sup_norm_ << ")";
            break;
        case PotentialKind::SeededRandom:
            os << "seeded_random(seed " << seed_ << ", depth " << envelope_.size() - 1 << ", sup "
               << sup_norm_ << ")";
            break;
    }
    return os.str();
}

WeightedNorm weighted_l2(const TreePotential& v, int depth) {
    if (depth < 0) throw std::invalid_argument("weighted_l2: depth must be >= 0");
    WeightedNorm out;
    out.depth_evaluated = depth;
    if (v.kind() == PotentialKind::Symmetric) {
        // 2^n vertices at distance n cancel the 2^-n weight
        const auto& q = v.symmetric_levels();
        for (int n = 0; n <= depth && n < static_cast<int>(q.size()); ++n)
            out.value += q[n] * q[n];
        return out;
    }
    for (const auto& [addr, val] : v.entries()) {
        if (addr.depth <= depth) out.value += std::ldexp(val * val, -addr.depth);
    }
    return out;
}

TreePotential truncate(const TreePotential& v, int k) {
    if (k < 0) throw std::invalid_argument("truncate: k must be >= 0");
    std::vector<std::pair<VertexAddress, double>> kept;
    if (v.kind() == PotentialKind::Symmetric) {
        const auto& q = v.symmetric_levels();
        std::vector<double> levels(q.begin(),
                                   q.begin() + std::min<std::size_t>(q.size(), k + 1));
        if (levels.size() > 24)
            throw ResourceError("truncate: symmetric potential too deep to tabulate");
        // materialize as a table so the kind contract of truncate holds
        for (int n = 0; n < static_cast<int>(levels.size()); ++n) {
            if (levels[n] == 0.0) continue;
            for (std::uint64_t b = 0; b < (1ULL << n); ++b)
                kept.emplace_back(VertexAddress(n, b), levels[n]);
        }
        return TreePotential::finite_table(kept);
    }
    for (const auto& [addr, val] : v.entries())
        if (addr.depth <= k && val != 0.0) kept.emplace_back(addr, val);
    return TreePotential::finite_table(kept);
}

} // namespace bethe
