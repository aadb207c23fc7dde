#include <cmath>
#include <cstdio>
#include <string>

#include "eulerfill/pipeline.hpp"

namespace eulerfill {
namespace {

constexpr double kMargin = 2.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", std::abs(v) < 5e-5 ? 0.0 : v);
    return buf;
}

struct Frame {
    BoundingBox box;

    double width() const { return box.valid() ? box.max.x - box.min.x + 2 * kMargin : 10.0; }
    double height() const { return box.valid() ? box.max.y - box.min.y + 2 * kMargin : 10.0; }
    // Screen coordinates: y grows downwards.
    std::string at(Point2 p) const { return num(p.x - box.min.x + kMargin) + "," + num(box.max.y - p.y + kMargin); }

    std::string open() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               num(width()) + "mm\" height=\"" + num(height()) + "mm\" viewBox=\"0 0 " + num(width()) + " " + num(height()) + "\">\n";
    }
};

const char* style_of(const Move& m) {
    if (m.kind == MoveKind::Travel) return "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.15\" stroke-dasharray=\"0.8,0.6\"";
    if (m.support) return "fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"0.3\"";
    return "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.3\" stroke-linejoin=\"round\"";
}

const char* fill_of(FaceClass c) {
    switch (c) {
        case FaceClass::Class1: return "#dce6f5";
        case FaceClass::Class2: return "#f5e6c8";
        case FaceClass::Class3: return "#e0f0dc";
        case FaceClass::None: break;
    }
    return "#eeeeee";
}

}  // namespace

std::string emit_svg(const ToolPath& path) {
    Frame f;
    for (const auto& m : path.moves) {
        f.box.extend(m.from);
        f.box.extend(m.to);
    }
    std::string out = f.open();
    // Runs of touching moves with the same style become one polyline.
    for (std::size_t i = 0; i < path.moves.size();) {
        std::size_t j = i + 1;
        while (j < path.moves.size() && path.moves[j].kind == path.moves[i].kind && path.moves[j].support == path.moves[i].support &&
               path.moves[j].from == path.moves[j - 1].to)
            ++j;
        out += "<polyline " + std::string(style_of(path.moves[i])) + " points=\"" + f.at(path.moves[i].from);
        for (std::size_t t = i; t < j; ++t) out += " " + f.at(path.moves[t].to);
        out += "\"/>\n";
        i = j;
    }
    out += "</svg>\n";
    return out;
}

std::string emit_svg(const CellComplex& k) {
    Frame f;
    f.box = k.bbox();
    std::string out = f.open();
    for (int face = 0; face < static_cast<int>(k.num_faces()); ++face) {
        if (!k.is_interior(face)) continue;
        out += "<polygon fill=\"" + std::string(fill_of(k.faces[face].cls)) + "\" stroke=\"#333333\" stroke-width=\"0.05\" points=\"";
        const auto ring = k.face_ring(face);
        for (std::size_t i = 0; i < ring.size(); ++i) out += (i ? " " : "") + f.at(ring[i]);
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string emit_gcode(const std::vector<std::pair<double, const ToolPath*>>& layers, double layer_height, const JobConfig& cfg) {
    const double filament_area = M_PI * std::pow(cfg.filament_diameter / 2, 2);
    const double per_mm = layer_height * 2 * cfg.print.extruder_radius / filament_area;
    std::string out = cfg.gcode_header;
    double e = 0;
    std::optional<Point2> here;
    char buf[128];
    for (const auto& [z, path] : layers) {
        std::snprintf(buf, sizeof buf, "G0 Z%.3f\n", z);
        out += buf;
        for (const auto& m : path->moves) {
            if (!here || !(*here == m.from)) {
                std::snprintf(buf, sizeof buf, "G0 X%.4f Y%.4f\n", m.from.x, m.from.y);
                out += buf;
            }
            if (m.kind == MoveKind::Travel) {
                std::snprintf(buf, sizeof buf, "G0 X%.4f Y%.4f\n", m.to.x, m.to.y);
            } else {
                e += per_mm * distance(m.from, m.to);
                std::snprintf(buf, sizeof buf, "G1 X%.4f Y%.4f E%.5f\n", m.to.x, m.to.y, e);
            }
            out += buf;
            here = m.to;
        }
    }
    out += cfg.gcode_footer;
    return out;
}

}  // namespace eulerfill
