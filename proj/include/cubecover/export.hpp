#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cubecover/document.hpp"
#include "cubecover/hypercube.hpp"
#include "cubecover/linear.hpp"
#include "cubecover/rational.hpp"

namespace cubecover {

/// One vertex per row, canonical rational text, no header.
inline std::string to_csv(const ChainDocument& doc) {
    std::string out;
    auto row = [&](const PointQ& p) {
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) out += ',';
            out += p[i].str();
        }
        out += '\n';
    };
    if (doc.is_chain()) {
        for (const PointQ& v : doc.chain().vertices) row(v);
    } else {
        for (const SegmentQ& s : doc.star().segments) {
            row(s.a);
            row(s.b);
        }
    }
    return out;
}

namespace detail {

struct SvgFrame {
    Rat xmin, xmax, ymin, ymax;
    bool first = true;

    void grow(const Rat& x, const Rat& y) {
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
            return;
        }
        if (x < xmin) xmin = x;
        if (x > xmax) xmax = x;
        if (y < ymin) ymin = y;
        if (y > ymax) ymax = y;
    }
};

}  // namespace detail

/// Deterministic SVG of the orthogonal projection onto coordinates
/// (proj_x, proj_y): nodes as circles, the chain as one polyline (star
/// documents draw individual lines). Geometry stays rational until the final
/// pixel rounding; byte output depends only on the document.
inline std::string to_svg(const ChainDocument& doc, std::size_t proj_x, std::size_t proj_y) {
    if (proj_x >= static_cast<std::size_t>(doc.k) || proj_y >= static_cast<std::size_t>(doc.k) ||
        proj_x == proj_y)
        throw std::invalid_argument("svg: projection indices must be distinct and below k");

    const long scale = 120;
    const long margin = 40;

    std::vector<std::pair<Rat, Rat>> chain_pts;
    std::vector<std::pair<std::pair<Rat, Rat>, std::pair<Rat, Rat>>> star_lines;
    if (doc.is_chain()) {
        for (const PointQ& v : doc.chain().vertices) chain_pts.emplace_back(v[proj_x], v[proj_y]);
    } else {
        for (const SegmentQ& s : doc.star().segments)
            star_lines.push_back({{s.a[proj_x], s.a[proj_y]}, {s.b[proj_x], s.b[proj_y]}});
    }
    // Node projections collapse onto the four corners of the unit square.
    std::set<std::pair<Rat, Rat>> node_pts;
    for (std::uint64_t id = 0; id < node_count(doc.k); ++id) {
        PointQ p = node_point(doc.k, NodeId{std::uint32_t(id)});
        node_pts.insert({p[proj_x], p[proj_y]});
    }

    detail::SvgFrame frame;
    for (const auto& [x, y] : chain_pts) frame.grow(x, y);
    for (const auto& [a, b] : star_lines) {
        frame.grow(a.first, a.second);
        frame.grow(b.first, b.second);
    }
    for (const auto& [x, y] : node_pts) frame.grow(x, y);

    auto px = [&](const Rat& x) {
        return round_nearest((x - frame.xmin) * Rat(scale)) + margin;
    };
    auto py = [&](const Rat& y) {
        return round_nearest((frame.ymax - y) * Rat(scale)) + margin;  // SVG y grows downward
    };
    BigInt width = round_nearest((frame.xmax - frame.xmin) * Rat(scale)) + 2 * margin;
    BigInt height = round_nearest((frame.ymax - frame.ymin) * Rat(scale)) + 2 * margin;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + width.str() + "\" height=\"" +
           height.str() + "\" viewBox=\"0 0 " + width.str() + " " + height.str() + "\">\n";
    svg += "<rect width=\"" + width.str() + "\" height=\"" + height.str() + "\" fill=\"white\"/>\n";
    if (!chain_pts.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"#2a6fb0\" stroke-width=\"4\" points=\"";
        for (std::size_t i = 0; i < chain_pts.size(); ++i) {
            if (i) svg += ' ';
            svg += px(chain_pts[i].first).str() + "," + py(chain_pts[i].second).str();
        }
        svg += "\"/>\n";
    }
    for (const auto& [a, b] : star_lines) {
        svg += "<line stroke=\"#2a6fb0\" stroke-width=\"4\" x1=\"" + px(a.first).str() +
               "\" y1=\"" + py(a.second).str() + "\" x2=\"" + px(b.first).str() + "\" y2=\"" +
               py(b.second).str() + "\"/>\n";
    }
    for (const auto& [x, y] : node_pts) {
        svg += "<circle cx=\"" + px(x).str() + "\" cy=\"" + py(y).str() +
               "\" r=\"7\" fill=\"#c23b22\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace cubecover
