#include "qsc/error.hpp"
#include "qsc/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace qsc {

namespace {

struct PlacedArc {
    int left;   // column/x of the later vertex (drawn on the left)
    int right;  // column/x of the earlier vertex
    int level;
};

// Arcs whose horizontal extents strictly overlap get distinct heights; nested
// arcs sit above the ones they enclose.
std::vector<PlacedArc> place_arcs(const GoldstoneDiagram &d, int spacing, int margin) {
    const int n = d.size();
    auto column = [&](int vertex) { return margin + spacing * (n - vertex); };
    std::vector<Edge> order = d.edges();
    std::stable_sort(order.begin(), order.end(), [](const Edge &a, const Edge &b) {
        return (a.later - a.earlier) < (b.later - b.earlier);
    });
    std::vector<PlacedArc> placed;
    for (const auto &e : order) {
        const int left = column(e.later);
        const int right = column(e.earlier);
        int level = 1;
        for (const auto &p : placed) {
            if (std::max(left, p.left) < std::min(right, p.right)) {
                level = std::max(level, p.level + 1);
            }
        }
        placed.push_back({left, right, level});
    }
    return placed;
}

std::string render_text(const GoldstoneDiagram &d) {
    constexpr int spacing = 4;
    constexpr int margin = 2;
    const int n = d.size();
    const int width = spacing * n + 1;
    const auto arcs = place_arcs(d, spacing, margin);
    int height = 0;
    for (const auto &a : arcs) height = std::max(height, a.level);

    std::vector<std::string> rows(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), ' '));
    for (int level = height; level >= 1; --level) {
        auto &row = rows[static_cast<std::size_t>(height - level)];
        for (const auto &a : arcs) {
            if (a.level == level) {
                for (int x = a.left + 1; x < a.right; ++x) {
                    if (row[static_cast<std::size_t>(x)] == ' ') row[static_cast<std::size_t>(x)] = '-';
                }
                row[static_cast<std::size_t>(a.left)] = '+';
                row[static_cast<std::size_t>(a.right)] = '+';
            } else if (a.level > level) {
                row[static_cast<std::size_t>(a.left)] = '|';
                row[static_cast<std::size_t>(a.right)] = '|';
            }
        }
    }

    std::string baseline(static_cast<std::size_t>(width), ' ');
    for (int x = 0; x < width; x += 2) baseline[static_cast<std::size_t>(x)] = '-';
    std::string labels(static_cast<std::size_t>(width) + 2, ' ');
    for (int v = 1; v <= n; ++v) {
        const int x = margin + spacing * (n - v);
        baseline[static_cast<std::size_t>(x)] = 'o';
        const auto label = std::to_string(v);
        labels.replace(static_cast<std::size_t>(x), label.size(), label);
    }

    std::ostringstream os;
    auto emit = [&os](std::string line) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    };
    for (auto &row : rows) emit(row);
    emit(baseline);
    emit(labels);
    return os.str();
}

std::string render_svg(const GoldstoneDiagram &d) {
    constexpr int spacing = 40;
    constexpr int margin = 40;
    constexpr int arc_step = 16;
    const int n = d.size();
    const auto arcs = place_arcs(d, spacing, margin);
    int height_levels = 0;
    for (const auto &a : arcs) height_levels = std::max(height_levels, a.level);
    const int width = spacing * (n - 1) + 2 * margin;
    const int baseline = 20 + arc_step * height_levels + 10;
    const int height = baseline + 30;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "  <title>" << to_compact_string(d) << "</title>\n";
    os << "  <line x1=\"0\" y1=\"" << baseline << "\" x2=\"" << width << "\" y2=\"" << baseline
       << "\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n";
    for (const auto &a : arcs) {
        const int rx = (a.right - a.left) / 2;
        const int ry = arc_step * a.level;
        os << "  <path d=\"M " << a.left << ' ' << baseline << " A " << rx << ' ' << ry << " 0 0 1 " << a.right << ' '
           << baseline << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    for (int v = 1; v <= n; ++v) {
        const int x = margin + spacing * (n - v);
        os << "  <circle cx=\"" << x << "\" cy=\"" << baseline << "\" r=\"4\" fill=\"black\"/>\n";
        os << "  <text x=\"" << x << "\" y=\"" << baseline + 20 << "\" text-anchor=\"middle\" font-size=\"12\">" << v
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

RenderFormat parse_render_format(std::string_view label) {
    if (label == "text") return RenderFormat::text;
    if (label == "svg") return RenderFormat::svg;
    throw InputError("unsupported render format '" + std::string(label) + "' (expected text or svg)");
}

std::string render_diagram(const GoldstoneDiagram &d, RenderFormat format) {
    switch (format) {
    case RenderFormat::text: return render_text(d);
    case RenderFormat::svg: return render_svg(d);
    }
    throw InputError("unsupported render format");
}

}  // namespace qsc
