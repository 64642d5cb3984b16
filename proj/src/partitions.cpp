#include "qsc/partitions.hpp"

#include "qsc/error.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace qsc {

SetPartition::SetPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n_ < 0) {
        throw InputError("set partition size must be non-negative");
    }
    std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
    int covered = 0;
    for (auto &block : blocks_) {
        if (block.empty()) {
            throw InputError("set partition contains an empty block");
        }
        std::sort(block.begin(), block.end());
        for (int v : block) {
            if (v < 1 || v > n_) {
                throw InputError("set partition element " + std::to_string(v) + " outside 1.." + std::to_string(n_));
            }
            if (seen[static_cast<std::size_t>(v)]) {
                throw InputError("set partition element " + std::to_string(v) + " appears twice");
            }
            seen[static_cast<std::size_t>(v)] = 1;
            ++covered;
        }
    }
    if (covered != n_) {
        throw InputError("set partition blocks do not cover 1.." + std::to_string(n_));
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const Block &a, const Block &b) { return a.front() < b.front(); });
}

SetPartition SetPartition::from_growth_string(const std::vector<int> &rgs) {
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < rgs.size(); ++k) {
        const auto b = static_cast<std::size_t>(rgs[k]);
        if (b > blocks.size()) {
            throw InputError("not a restricted growth string");
        }
        if (b == blocks.size()) {
            blocks.emplace_back();
        }
        blocks[b].push_back(static_cast<int>(k) + 1);
    }
    return SetPartition(static_cast<int>(rgs.size()), std::move(blocks));
}

std::vector<int> SetPartition::profile() const {
    std::vector<int> sizes;
    sizes.reserve(blocks_.size());
    for (const auto &b : blocks_) {
        sizes.push_back(static_cast<int>(b.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::string to_string(const SetPartition &p) {
    std::ostringstream os;
    os << '{';
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        if (b) os << ',';
        os << '{';
        const auto &block = p.blocks()[b];
        for (std::size_t k = 0; k < block.size(); ++k) {
            if (k) os << ',';
            os << block[k];
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

// Restricted growth strings: rgs[0] = 0 and rgs[k] <= 1 + max(rgs[0..k-1]).
SetPartitionRange::iterator::iterator(int n) : rgs_(static_cast<std::size_t>(n), 0), done_(false) {
    current_ = SetPartition::from_growth_string(rgs_);
}

SetPartitionRange::iterator &SetPartitionRange::iterator::operator++() {
    const std::size_t n = rgs_.size();
    std::vector<int> prefix_max(n, 0);
    for (std::size_t k = 1; k < n; ++k) {
        prefix_max[k] = std::max(prefix_max[k - 1], rgs_[k - 1]);
    }
    for (std::size_t k = n; k-- > 1;) {
        if (rgs_[k] <= prefix_max[k]) {
            ++rgs_[k];
            std::fill(rgs_.begin() + static_cast<std::ptrdiff_t>(k) + 1, rgs_.end(), 0);
            current_ = SetPartition::from_growth_string(rgs_);
            return *this;
        }
    }
    done_ = true;
    return *this;
}

SetPartitionRange enumerate_set_partitions(int n) {
    if (n < 1 || n > kMaxSetPartitionVertices) {
        throw EnumerationBoundError("set partition enumeration requires 1 <= n <= " +
                                    std::to_string(kMaxSetPartitionVertices) + ", got " + std::to_string(n));
    }
    return SetPartitionRange(n);
}

std::vector<BigInt> stirling2_row(int n) {
    if (n < 0) {
        throw InputError("stirling2 requires n >= 0");
    }
    // S(k, m) = m S(k-1, m) + S(k-1, m-1)
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int k = 1; k <= n; ++k) {
        for (int m = k; m >= 1; --m) {
            row[static_cast<std::size_t>(m)] = m * row[static_cast<std::size_t>(m)] + row[static_cast<std::size_t>(m - 1)];
        }
        row[0] = 0;
    }
    return row;
}

BigInt stirling2(int n, int m) {
    if (n < 0 || m < 0) {
        throw InputError("stirling2 requires non-negative arguments");
    }
    if (m > n) {
        return 0;
    }
    return stirling2_row(n)[static_cast<std::size_t>(m)];
}

BigInt bell(int n) {
    const auto row = stirling2_row(n);
    return std::accumulate(row.begin(), row.end(), BigInt(0));
}

std::string_view to_string(VertexRole role) {
    switch (role) {
    case VertexRole::constant: return "constant";
    case VertexRole::emission: return "emission";
    case VertexRole::absorption: return "absorption";
    case VertexRole::scattering: return "scattering";
    }
    return "unknown";
}

GoldstoneDiagram::GoldstoneDiagram(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) {
        throw InputError("diagram needs at least one vertex");
    }
    std::vector<int> incoming(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<int> outgoing(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto &e : edges_) {
        if (e.earlier < 1 || e.later > n_ || e.later <= e.earlier) {
            throw InputError("edge (" + std::to_string(e.later) + "," + std::to_string(e.earlier) +
                             ") must satisfy n >= i > j >= 1");
        }
        if (++incoming[static_cast<std::size_t>(e.later)] > 1) {
            throw InputError("vertex " + std::to_string(e.later) + " has more than one incoming contraction");
        }
        if (++outgoing[static_cast<std::size_t>(e.earlier)] > 1) {
            throw InputError("vertex " + std::to_string(e.earlier) + " has more than one outgoing contraction");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    roles_.resize(static_cast<std::size_t>(n_));
    for (int v = 1; v <= n_; ++v) {
        const bool in = incoming[static_cast<std::size_t>(v)] != 0;
        const bool out = outgoing[static_cast<std::size_t>(v)] != 0;
        roles_[static_cast<std::size_t>(v - 1)] = in ? (out ? VertexRole::scattering : VertexRole::absorption)
                                                    : (out ? VertexRole::emission : VertexRole::constant);
    }
}

SetPartition GoldstoneDiagram::blocks() const {
    // Each vertex has at most one successor, so components are chains we can walk.
    std::vector<int> next(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto &e : edges_) {
        next[static_cast<std::size_t>(e.earlier)] = e.later;
    }
    std::vector<SetPartition::Block> blocks;
    for (int v = 1; v <= n_; ++v) {
        const auto r = roles_[static_cast<std::size_t>(v - 1)];
        if (r == VertexRole::constant || r == VertexRole::emission) {
            SetPartition::Block block;
            for (int u = v; u != 0; u = next[static_cast<std::size_t>(u)]) {
                block.push_back(u);
            }
            blocks.push_back(std::move(block));
        }
    }
    return SetPartition(n_, std::move(blocks));
}

std::string to_compact_string(const GoldstoneDiagram &d) {
    std::ostringstream os;
    os << d.size() << ";edges=";
    for (std::size_t k = 0; k < d.edges().size(); ++k) {
        if (k) os << ',';
        os << '(' << d.edges()[k].later << ',' << d.edges()[k].earlier << ')';
    }
    return os.str();
}

namespace {

class DiagramParser {
  public:
    explicit DiagramParser(std::string_view text) : text_(text) {}

    GoldstoneDiagram parse() {
        const int n = integer();
        expect(';');
        skip_spaces();
        if (text_.substr(pos_).starts_with("edges")) {
            pos_ += 5;
            expect('=');
        }
        std::vector<Edge> edges;
        skip_spaces();
        if (pos_ < text_.size()) {
            do {
                expect('(');
                const int i = integer();
                expect(',');
                const int j = integer();
                expect(')');
                edges.push_back({i, j});
            } while (accept(','));
        }
        skip_spaces();
        if (pos_ != text_.size()) fail("unexpected trailing text");
        return GoldstoneDiagram(n, std::move(edges));
    }

  private:
    void skip_spaces() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }
    bool accept(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_spaces();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }
    int integer() {
        skip_spaces();
        int value = 0;
        const auto *first = text_.data() + pos_;
        const auto *last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            fail("expected an integer");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw InputError("cannot parse diagram '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                         ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

GoldstoneDiagram parse_diagram(std::string_view text) { return DiagramParser(text).parse(); }

PairPartitionRange::iterator::iterator(int n) : n_(n), choices_(static_cast<std::size_t>(n / 2), 0), done_(false) {
    if (n % 2 != 0 || n == 0) {
        done_ = true;
        return;
    }
    decode();
}

void PairPartitionRange::iterator::decode() {
    std::vector<int> free(static_cast<std::size_t>(n_));
    std::iota(free.begin(), free.end(), 1);
    std::vector<Edge> edges;
    edges.reserve(choices_.size());
    for (int c : choices_) {
        const int earlier = free.front();
        const int later = free[static_cast<std::size_t>(c) + 1];
        free.erase(free.begin() + c + 1);
        free.erase(free.begin());
        edges.push_back({later, earlier});
    }
    current_ = GoldstoneDiagram(n_, std::move(edges));
}

PairPartitionRange::iterator &PairPartitionRange::iterator::operator++() {
    for (std::size_t k = choices_.size(); k-- > 0;) {
        const int radix = n_ - 1 - 2 * static_cast<int>(k);
        if (++choices_[k] < radix) {
            decode();
            return *this;
        }
        choices_[k] = 0;
    }
    done_ = true;
    return *this;
}

PairPartitionRange enumerate_pair_partitions(int n) {
    if (n < 0 || n > kMaxPairPartitionVertices) {
        throw EnumerationBoundError("pair partition enumeration requires 0 <= n <= " +
                                    std::to_string(kMaxPairPartitionVertices) + ", got " + std::to_string(n));
    }
    return PairPartitionRange(n);
}

BigInt pair_partition_count(int n) {
    if (n < 0) {
        throw InputError("pair_partition_count requires n >= 0");
    }
    if (n % 2 != 0) {
        return 0;
    }
    BigInt count = 1;  // (n-1)!!
    for (int k = n - 1; k > 1; k -= 2) {
        count *= k;
    }
    return count;
}

GoldstoneDiagram diagram_from_partition(const SetPartition &p) {
    std::vector<Edge> edges;
    for (const auto &block : p.blocks()) {
        for (std::size_t k = 1; k < block.size(); ++k) {
            edges.push_back({block[k], block[k - 1]});
        }
    }
    return GoldstoneDiagram(p.size(), std::move(edges));
}

bool is_time_consecutive(const GoldstoneDiagram &d) {
    return std::all_of(d.edges().begin(), d.edges().end(), [](const Edge &e) { return e.later == e.earlier + 1; });
}

bool AdmissiblePermutation::is_identity() const {
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (sigma[k] != static_cast<int>(k) + 1) return false;
    }
    return true;
}

GoldstoneDiagram canonical_diagram(const std::vector<int> &profile) {
    auto sizes = profile;
    std::sort(sizes.begin(), sizes.end());
    int n = 0;
    std::vector<Edge> edges;
    for (int size : sizes) {
        if (size < 1) {
            throw InputError("block sizes must be positive");
        }
        for (int k = 1; k < size; ++k) {
            edges.push_back({n + k + 1, n + k});
        }
        n += size;
    }
    return GoldstoneDiagram(n, std::move(edges));
}

AdmissiblePermutation admissible_reorder(const GoldstoneDiagram &d) {
    auto blocks = d.blocks().blocks();  // sorted by first emission time
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto &a, const auto &b) { return a.size() < b.size(); });
    AdmissiblePermutation perm;
    perm.sigma.assign(static_cast<std::size_t>(d.size()), 0);
    int position = 0;
    for (const auto &block : blocks) {
        for (int v : block) {
            perm.sigma[static_cast<std::size_t>(v - 1)] = ++position;
        }
    }
    return perm;
}

GoldstoneDiagram apply_permutation(const AdmissiblePermutation &sigma, const GoldstoneDiagram &d) {
    if (static_cast<int>(sigma.sigma.size()) != d.size()) {
        throw InputError("permutation size does not match diagram");
    }
    std::vector<Edge> edges;
    edges.reserve(d.edges().size());
    for (const auto &e : d.edges()) {
        const int a = sigma(e.later);
        const int b = sigma(e.earlier);
        edges.push_back({std::max(a, b), std::min(a, b)});
    }
    return GoldstoneDiagram(d.size(), std::move(edges));
}

}  // namespace qsc
