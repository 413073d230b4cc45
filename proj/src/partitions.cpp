#include "spdgeo/partitions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "spdgeo/errors.hpp"

namespace spdgeo {

namespace {

std::string block_string(const Block& b) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) os << ' ';
        os << b[i];
    }
    os << ')';
    return os.str();
}

bool is_interval(const Block& b) {
    for (size_t i = 1; i < b.size(); ++i)
        if (b[i] != b[i - 1] + 1) return false;
    return true;
}

bool disjoint(const Block& a, const Block& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

bool subset(const Block& a, const Block& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// All partitions of `ground` into at least `minBlocks` blocks.
// segmental restricts blocks to runs of consecutive positions in `ground`.
void set_partitions(const Block& ground, bool segmental, size_t minBlocks,
                    std::vector<std::vector<Block>>& out) {
    const size_t m = ground.size();
    if (segmental) {
        // choose cut positions between consecutive entries
        for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
            std::vector<Block> p;
            Block cur{ground[0]};
            for (size_t i = 1; i < m; ++i) {
                if (mask & (1u << (i - 1))) {
                    p.push_back(cur);
                    cur.clear();
                }
                cur.push_back(ground[i]);
            }
            p.push_back(cur);
            if (p.size() >= minBlocks) out.push_back(std::move(p));
        }
        return;
    }
    // restricted growth strings
    std::vector<int> assign(m, 0);
    auto emit = [&]() {
        int k = *std::max_element(assign.begin(), assign.end()) + 1;
        if (static_cast<size_t>(k) < minBlocks) return;
        std::vector<Block> p(k);
        for (size_t i = 0; i < m; ++i) p[assign[i]].push_back(ground[i]);
        out.push_back(std::move(p));
    };
    // iterate restricted growth strings: assign[0] = 0, assign[i] <= max(prefix)+1
    while (true) {
        emit();
        int i = static_cast<int>(m) - 1;
        for (; i >= 1; --i) {
            int prefixMax = 0;
            for (int j = 0; j < i; ++j) prefixMax = std::max(prefixMax, assign[j]);
            if (assign[i] <= prefixMax) {
                ++assign[i];
                for (size_t j = i + 1; j < m; ++j) assign[j] = 0;
                break;
            }
        }
        if (i < 1) break;
    }
}

} // namespace

Partition Partition::trivial(int n) {
    Partition p;
    p.n = n;
    Block all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    p.blocks.push_back(all);
    return p;
}

Partition Partition::singletons(int n) {
    Partition p;
    p.n = n;
    for (int i = 1; i <= n; ++i) p.blocks.push_back({i});
    return p;
}

void Partition::canonicalize() {
    for (Block& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

bool Partition::refines(const Partition& coarser) const {
    for (const Block& b : blocks) {
        bool found = false;
        for (const Block& c : coarser.blocks)
            if (subset(b, c)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

TreePartition::TreePartition(int n, std::vector<Block> sets) : n_(n) {
    for (Block& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty() || s.front() < 1 || s.back() > n)
            throw InvalidIndex("tree-partition sets must be nonempty subsets of 1..n");
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    sets_ = std::move(sets);

    Block full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    if (std::find(sets_.begin(), sets_.end(), full) == sets_.end())
        throw InvalidIndex("tree-partition must contain the full set");

    for (size_t i = 0; i < sets_.size(); ++i)
        for (size_t j = i + 1; j < sets_.size(); ++j)
            if (!disjoint(sets_[i], sets_[j]) && !subset(sets_[i], sets_[j]) &&
                !subset(sets_[j], sets_[i]))
                throw InvalidIndex("tree-partition sets must be nested or disjoint");

    children_.assign(sets_.size(), {});
    for (size_t i = 0; i < sets_.size(); ++i)
        for (size_t j = 0; j < sets_.size(); ++j) {
            if (i == j || !subset(sets_[j], sets_[i]) || sets_[j] == sets_[i]) continue;
            bool maximal = true;
            for (size_t k = 0; k < sets_.size() && maximal; ++k) {
                if (k == i || k == j) continue;
                if (subset(sets_[j], sets_[k]) && subset(sets_[k], sets_[i]) &&
                    sets_[k] != sets_[j] && sets_[k] != sets_[i])
                    maximal = false;
            }
            if (maximal) children_[i].push_back(static_cast<int>(j));
        }

    for (size_t i = 0; i < sets_.size(); ++i) {
        if (children_[i].empty()) continue;
        size_t covered = 0;
        for (int c : children_[i]) covered += sets_[c].size();
        if (covered != sets_[i].size())
            throw InvalidIndex("maximal children must tile each reducible set");
    }

    segmental_ = std::all_of(sets_.begin(), sets_.end(), is_interval);
    perfect_ = true;
    for (size_t i = 0; i < sets_.size(); ++i)
        if (children_[i].empty() && sets_[i].size() > 1) perfect_ = false;
}

std::string TreePartition::label() const {
    std::ostringstream os;
    for (const Block& s : sets_) os << block_string(s);
    return os.str();
}

LeveledTreePartition::LeveledTreePartition(std::vector<Partition> levels)
    : levels_(std::move(levels)) {
    if (levels_.empty()) throw InvalidIndex("leveled tree-partition needs at least one level");
    for (Partition& p : levels_) p.canonicalize();
    if (!(levels_.front() == Partition::trivial(levels_.front().n)))
        throw InvalidIndex("level 0 must be the trivial partition");
    for (size_t m = 0; m + 1 < levels_.size(); ++m) {
        if (!levels_[m + 1].refines(levels_[m]))
            throw InvalidIndex("each level must subdivide the previous one");
        if (levels_[m + 1] == levels_[m])
            throw InvalidIndex("consecutive levels must differ");
    }
}

bool LeveledTreePartition::is_segmental() const {
    for (const Partition& p : levels_)
        for (const Block& b : p.blocks)
            if (!is_interval(b)) return false;
    return true;
}

bool LeveledTreePartition::operator<(const LeveledTreePartition& other) const {
    std::vector<std::vector<Block>> a, b;
    for (const Partition& p : levels_) a.push_back(p.blocks);
    for (const Partition& p : other.levels_) b.push_back(p.blocks);
    return a < b;
}

std::string LeveledTreePartition::label() const {
    std::ostringstream os;
    for (size_t m = 0; m < levels_.size(); ++m) {
        if (m) os << "; ";
        for (const Block& b : levels_[m].blocks) os << block_string(b);
    }
    return os.str();
}

namespace {

// tree-partition families of the given ground set, as lists of sets
void gen_tree_families(const Block& ground, bool segmental, bool perfect,
                       std::vector<std::vector<Block>>& out) {
    if (!perfect || ground.size() == 1) out.push_back({ground});
    if (ground.size() < 2) return;
    std::vector<std::vector<Block>> parts;
    set_partitions(ground, segmental, 2, parts);
    for (const std::vector<Block>& p : parts) {
        std::vector<std::vector<std::vector<Block>>> perChild(p.size());
        for (size_t i = 0; i < p.size(); ++i)
            gen_tree_families(p[i], segmental, perfect, perChild[i]);
        std::vector<size_t> pick(p.size(), 0);
        while (true) {
            std::vector<Block> family{ground};
            for (size_t i = 0; i < p.size(); ++i)
                for (const Block& s : perChild[i][pick[i]]) family.push_back(s);
            out.push_back(std::move(family));
            size_t i = 0;
            for (; i < p.size(); ++i) {
                if (++pick[i] < perChild[i].size()) break;
                pick[i] = 0;
            }
            if (i == p.size()) break;
        }
    }
}

} // namespace

std::vector<TreePartition> enumerate_tree_partitions(int n, bool segmentalOnly,
                                                     bool perfectOnly) {
    if (n < 1 || n > 9) throw TooLarge("tree-partition enumeration supports 1 <= n <= 9");
    Block ground(n);
    for (int i = 0; i < n; ++i) ground[i] = i + 1;
    std::vector<std::vector<Block>> fams;
    gen_tree_families(ground, segmentalOnly, perfectOnly, fams);
    std::vector<TreePartition> out;
    out.reserve(fams.size());
    for (std::vector<Block>& f : fams) out.emplace_back(n, std::move(f));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// strict refinements of p: subdivide every block independently, not all trivially
void strict_refinements(const Partition& p, bool segmental, std::vector<Partition>& out) {
    std::vector<std::vector<std::vector<Block>>> perBlock(p.blocks.size());
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        perBlock[i].push_back({p.blocks[i]});
        if (p.blocks[i].size() >= 2) set_partitions(p.blocks[i], segmental, 2, perBlock[i]);
    }
    std::vector<size_t> pick(p.blocks.size(), 0);
    while (true) {
        bool allTrivial = std::all_of(pick.begin(), pick.end(), [](size_t x) { return x == 0; });
        if (!allTrivial) {
            Partition q;
            q.n = p.n;
            for (size_t i = 0; i < p.blocks.size(); ++i)
                for (const Block& b : perBlock[i][pick[i]]) q.blocks.push_back(b);
            q.canonicalize();
            out.push_back(std::move(q));
        }
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < perBlock[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
}

void gen_leveled(std::vector<Partition>& chain, bool segmental,
                 std::vector<LeveledTreePartition>& out) {
    out.emplace_back(chain);
    std::vector<Partition> next;
    strict_refinements(chain.back(), segmental, next);
    for (Partition& q : next) {
        chain.push_back(std::move(q));
        gen_leveled(chain, segmental, out);
        chain.pop_back();
    }
}

} // namespace

std::vector<LeveledTreePartition> enumerate_leveled(int n, bool segmentalOnly) {
    if (n < 1 || n > 7) throw TooLarge("leveled enumeration supports 1 <= n <= 7");
    std::vector<Partition> chain{Partition::trivial(n)};
    std::vector<LeveledTreePartition> out;
    gen_leveled(chain, segmentalOnly, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Stratum::label() const {
    if (tree) return tree->label();
    if (leveled) return leveled->label();
    return "";
}

namespace {
unsigned long long factorial(int k) {
    unsigned long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
} // namespace

Stratum stratum_pass(const TreePartition& a, int n) {
    if (a.n() != n) throw DimensionMismatch("tree-partition ground set does not match n");
    Stratum s;
    s.kind = StratumKind::Pass;
    s.tree = a;
    int dim = 0;
    unsigned long long comp = 1;
    for (size_t i = 0; i < a.sets().size(); ++i) {
        if (a.irreducible(static_cast<int>(i))) {
            dim += static_cast<int>(a.sets()[i].size()) - 1;
        } else {
            const int h = static_cast<int>(a.children()[i].size());
            dim += h - 2;
            comp *= factorial(h);
        }
    }
    s.dim = dim;
    s.components = comp;
    return s;
}

Stratum stratum_karp(const LeveledTreePartition& a, int n) {
    if (a.n() != n) throw DimensionMismatch("leveled ground set does not match n");
    Stratum s;
    s.kind = StratumKind::Karp;
    s.leveled = a;
    s.dim = n - 1 - a.tau();
    unsigned long long comp = 1;
    for (int j = 0; j < a.tau(); ++j) {
        const Partition& coarse = a.levels()[j];
        const Partition& fine = a.levels()[j + 1];
        for (const Block& staffBlock : coarse.blocks) {
            int staffSize = 0;
            for (const Block& fb : fine.blocks)
                if (subset(fb, staffBlock)) ++staffSize;
            comp *= factorial(staffSize);
        }
    }
    s.components = comp;
    return s;
}

bool pass_closure_leq(const TreePartition& a, const TreePartition& b) {
    if (a.n() != b.n()) throw DimensionMismatch("tree-partitions on different ground sets");
    for (const Block& s : a.sets())
        if (!std::binary_search(b.sets().begin(), b.sets().end(), s)) return false;
    return true;
}

bool karp_closure_leq(const LeveledTreePartition& a, const LeveledTreePartition& b) {
    if (a.n() != b.n()) throw DimensionMismatch("leveled indices on different ground sets");
    for (const Partition& p : a.levels()) {
        bool found = false;
        for (const Partition& q : b.levels())
            if (p == q) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

TreePartition karp_to_pass(const LeveledTreePartition& a) {
    std::vector<Block> sets;
    for (const Partition& p : a.levels())
        for (const Block& b : p.blocks) sets.push_back(b);
    return TreePartition(a.n(), std::move(sets));
}

bool FaceLattice::leq(int below, int above) const {
    if (kind == FaceKind::Karp)
        return karp_closure_leq(*nodes[above].leveled, *nodes[below].leveled);
    return pass_closure_leq(*nodes[above].tree, *nodes[below].tree);
}

FaceLattice weyl_face_lattice(int n, FaceKind kind) {
    if (n < 1 || n > 7) throw TooLarge("face lattices support 1 <= n <= 7");
    FaceLattice l;
    l.kind = kind;
    l.n = n;
    if (kind == FaceKind::Karp) {
        for (LeveledTreePartition& a : enumerate_leveled(n, true)) {
            Stratum s = stratum_karp(a, n);
            s.kind = StratumKind::WeylKarp;
            s.components = 1;
            l.nodes.push_back(std::move(s));
        }
    } else {
        const bool perfect = kind == FaceKind::Ass;
        for (TreePartition& a : enumerate_tree_partitions(n, true, perfect)) {
            Stratum s = stratum_pass(a, n);
            s.kind = perfect ? StratumKind::AssFace : StratumKind::WeylPass;
            s.components = 1;
            l.nodes.push_back(std::move(s));
        }
    }

    const int m = static_cast<int>(l.nodes.size());
    std::vector<std::vector<bool>> le(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) le[i][j] = l.leq(i, j);

    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            if (!le[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < m && covered; ++k)
                if (le[i][k] && le[k][j]) covered = false;
            if (covered) l.covers.emplace_back(j, i);
        }

    for (int i = 0; i < m; ++i) {
        bool isTop = true, isBottom = true;
        for (int j = 0; j < m; ++j) {
            if (le[i][j]) isTop = false;
            if (le[j][i]) isBottom = false;
        }
        if (isTop) l.top = i;
        if (isBottom) l.bottoms.push_back(i);
    }
    return l;
}

std::vector<long long> f_vector(const FaceLattice& l) {
    int maxDim = 0;
    for (const Stratum& s : l.nodes) maxDim = std::max(maxDim, s.dim);
    std::vector<long long> f(maxDim + 1, 0);
    for (const Stratum& s : l.nodes) ++f[s.dim];
    return f;
}

std::string to_dot(const FaceLattice& l) {
    std::ostringstream os;
    os << "digraph faces {\n";
    os << "  rankdir=BT;\n";
    for (size_t i = 0; i < l.nodes.size(); ++i)
        os << "  n" << i << " [label=\"dim=" << l.nodes[i].dim << "; index="
           << l.nodes[i].label() << "\"];\n";
    for (const auto& [upper, lower] : l.covers)
        os << "  n" << lower << " -> n" << upper << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace spdgeo
