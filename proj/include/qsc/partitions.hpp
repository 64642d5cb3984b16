#pragma once
// Set partitions, pair partitions and Goldstone diagrams with four vertex types.
//
// Vertices are numbered 1..n with 1 the earliest time.  An edge (i, j) with
// i > j is a contraction from the creation leg at vertex j to the
// annihilation leg at vertex i.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsc {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxSetPartitionVertices = 14;
inline constexpr int kMaxPairPartitionVertices = 16;

class SetPartition {
  public:
    using Block = std::vector<int>;

    SetPartition() = default;
    /// Validates and canonicalizes: blocks sorted by smallest element, elements ascending.
    SetPartition(int n, std::vector<Block> blocks);

    /// Builds the partition encoded by a restricted growth string (rgs[k] = block of vertex k+1).
    static SetPartition from_growth_string(const std::vector<int> &rgs);

    int size() const noexcept { return n_; }
    const std::vector<Block> &blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }

    /// Block sizes sorted ascending.
    std::vector<int> profile() const;

    friend bool operator==(const SetPartition &, const SetPartition &) = default;

  private:
    int n_ = 0;
    std::vector<Block> blocks_;
};

std::string to_string(const SetPartition &p);

/// Input range over all set partitions of {1..n} in restricted-growth-string order.
class SetPartitionRange {
  public:
    class iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = SetPartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const SetPartition *;
        using reference = const SetPartition &;

        iterator() = default;
        explicit iterator(int n);

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator &operator++();
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator &a, const iterator &b) { return a.done_ == b.done_; }

      private:
        std::vector<int> rgs_;
        SetPartition current_;
        bool done_ = true;
    };

    explicit SetPartitionRange(int n) : n_(n) {}
    iterator begin() const { return iterator(n_); }
    iterator end() const { return iterator(); }

  private:
    int n_;
};

/// All set partitions of {1..n}; 1 <= n <= 14 or EnumerationBoundError.
SetPartitionRange enumerate_set_partitions(int n);

/// Stirling number of the second kind; zero when m > n.
BigInt stirling2(int n, int m);
/// Row S(n, 0..n).
std::vector<BigInt> stirling2_row(int n);
BigInt bell(int n);

enum class VertexRole { constant, emission, absorption, scattering };

std::string_view to_string(VertexRole role);

struct Edge {
    int later;    // annihilation end, i
    int earlier;  // creation end, j

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

class GoldstoneDiagram {
  public:
    GoldstoneDiagram() = default;
    /// Edges must satisfy n >= i > j >= 1 and give every vertex at most one
    /// incoming and one outgoing contraction.  Stored in lexicographic order.
    GoldstoneDiagram(int n, std::vector<Edge> edges);

    int size() const noexcept { return n_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    const std::vector<VertexRole> &roles() const noexcept { return roles_; }
    VertexRole role(int vertex) const { return roles_.at(static_cast<std::size_t>(vertex - 1)); }

    /// Connected components of the contraction graph.
    SetPartition blocks() const;

    friend bool operator==(const GoldstoneDiagram &a, const GoldstoneDiagram &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexRole> roles_;
};

/// Compact form `n;edges=(i,j),(k,l)` in lexicographic edge order.
std::string to_compact_string(const GoldstoneDiagram &d);
/// Accepts `n;edges=(i,j),...` and the shorter `n;(i,j),...`.
GoldstoneDiagram parse_diagram(std::string_view text);

class PairPartitionRange {
  public:
    class iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = GoldstoneDiagram;
        using difference_type = std::ptrdiff_t;
        using pointer = const GoldstoneDiagram *;
        using reference = const GoldstoneDiagram &;

        iterator() = default;
        explicit iterator(int n);

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator &operator++();
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator &a, const iterator &b) { return a.done_ == b.done_; }

      private:
        void decode();
        int n_ = 0;
        // Mixed-radix odometer: choices_[k] selects the partner of the k-th
        // smallest unpaired vertex among the n - 1 - 2k still available.
        std::vector<int> choices_;
        GoldstoneDiagram current_;
        bool done_ = true;
    };

    explicit PairPartitionRange(int n) : n_(n) {}
    iterator begin() const { return iterator(n_); }
    iterator end() const { return iterator(); }

  private:
    int n_;
};

/// All perfect matchings of n vertices as diagrams.  Odd n gives an empty range;
/// n > 16 raises EnumerationBoundError.
PairPartitionRange enumerate_pair_partitions(int n);

/// n! / (2^{n/2} (n/2)!) for even n, zero for odd n.
BigInt pair_partition_count(int n);

/// Each block becomes a chain of consecutive within-block contractions.
GoldstoneDiagram diagram_from_partition(const SetPartition &p);

/// True iff every edge joins adjacent time indices.
bool is_time_consecutive(const GoldstoneDiagram &d);

/// Permutation of vertex labels; sigma[v-1] is the image of vertex v.
struct AdmissiblePermutation {
    std::vector<int> sigma;

    int operator()(int vertex) const { return sigma.at(static_cast<std::size_t>(vertex - 1)); }
    bool is_identity() const;
    friend bool operator==(const AdmissiblePermutation &, const AdmissiblePermutation &) = default;
};

/// Diagram with blocks of the given sizes laid out as consecutive chains,
/// smallest blocks earliest.
GoldstoneDiagram canonical_diagram(const std::vector<int> &profile);

/// The unique relabeling that carries d onto canonical_diagram(d.blocks().profile())
/// while keeping the order of first emission times among blocks of equal size.
AdmissiblePermutation admissible_reorder(const GoldstoneDiagram &d);

GoldstoneDiagram apply_permutation(const AdmissiblePermutation &sigma, const GoldstoneDiagram &d);

enum class RenderFormat { text, svg };

RenderFormat parse_render_format(std::string_view label);
std::string render_diagram(const GoldstoneDiagram &d, RenderFormat format);

}  // namespace qsc
