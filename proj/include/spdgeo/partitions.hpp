#pragma once

#include <optional>
#include <string>
#include <vector>

namespace spdgeo {

using Block = std::vector<int>; // sorted ascending, 1-based labels

// Partition of {1..n}; blocks are kept sorted by minimum element.
struct Partition {
    int n = 0;
    std::vector<Block> blocks;

    static Partition trivial(int n);
    static Partition singletons(int n);
    void canonicalize();
    bool refines(const Partition& coarser) const;
    bool operator==(const Partition& other) const { return n == other.n && blocks == other.blocks; }
    bool operator<(const Partition& other) const { return blocks < other.blocks; }
};

// Laminar family of subsets of {1..n} containing the full set, in which every
// set with a proper subelement is tiled by its maximal children.
class TreePartition {
public:
    TreePartition() = default;
    TreePartition(int n, std::vector<Block> sets); // validates

    int n() const { return n_; }
    const std::vector<Block>& sets() const { return sets_; }
    // Indices of the maximal proper subelements of each set.
    const std::vector<std::vector<int>>& children() const { return children_; }
    bool irreducible(int idx) const { return children_[idx].empty(); }
    bool is_segmental() const { return segmental_; }
    bool is_perfect() const { return perfect_; }

    bool operator==(const TreePartition& other) const {
        return n_ == other.n_ && sets_ == other.sets_;
    }
    bool operator<(const TreePartition& other) const { return sets_ < other.sets_; }

    std::string label() const;

private:
    int n_ = 0;
    std::vector<Block> sets_;
    std::vector<std::vector<int>> children_;
    bool segmental_ = false;
    bool perfect_ = false;
};

// Strictly refining chain of partitions starting from the trivial one.
class LeveledTreePartition {
public:
    LeveledTreePartition() = default;
    explicit LeveledTreePartition(std::vector<Partition> levels); // validates

    int n() const { return levels_.front().n; }
    int tau() const { return static_cast<int>(levels_.size()) - 1; }
    const std::vector<Partition>& levels() const { return levels_; }
    bool is_segmental() const;

    bool operator==(const LeveledTreePartition& other) const { return levels_ == other.levels_; }
    bool operator<(const LeveledTreePartition& other) const;

    std::string label() const;

private:
    std::vector<Partition> levels_;
};

std::vector<TreePartition> enumerate_tree_partitions(int n, bool segmentalOnly,
                                                     bool perfectOnly);
std::vector<LeveledTreePartition> enumerate_leveled(int n, bool segmentalOnly);

enum class StratumKind { Pass, Karp, AssFace, WeylPass, WeylKarp };

struct Stratum {
    StratumKind kind = StratumKind::Pass;
    std::optional<TreePartition> tree;
    std::optional<LeveledTreePartition> leveled;
    int dim = 0;
    unsigned long long components = 1;

    std::string label() const;
};

Stratum stratum_pass(const TreePartition& a, int n);
Stratum stratum_karp(const LeveledTreePartition& a, int n);

// Closure orders: Str(B) lies in the closure of Str(A).
bool pass_closure_leq(const TreePartition& a, const TreePartition& b);
bool karp_closure_leq(const LeveledTreePartition& a, const LeveledTreePartition& b);

// Union of all level blocks, as a tree-partition.
TreePartition karp_to_pass(const LeveledTreePartition& a);

enum class FaceKind { Pass, Karp, Ass };

struct FaceLattice {
    FaceKind kind = FaceKind::Pass;
    int n = 0;
    std::vector<Stratum> nodes;
    std::vector<std::pair<int, int>> covers; // (upper, lower) Hasse edges
    int top = -1;                            // unique maximal node
    std::vector<int> bottoms;                // minimal nodes

    bool leq(int below, int above) const; // order relation between node indices
};

FaceLattice weyl_face_lattice(int n, FaceKind kind);
std::vector<long long> f_vector(const FaceLattice& l); // counts by dimension, ascending
std::string to_dot(const FaceLattice& l);

} // namespace spdgeo
