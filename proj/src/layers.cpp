#include <stdexcept>

#include "json.hpp"

#include "eulerfill/slicing.hpp"

namespace eulerfill {
namespace {

using nlohmann::json;

Polygon ring_from_json(const json& j) {
    Polygon p;
    for (const auto& xy : j) p.ring.push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
    return p;
}

json ring_to_json(const Polygon& p) {
    json out = json::array();
    for (auto q : p.ring) out.push_back({q.x, q.y});
    return out;
}

}  // namespace

void LayerStack::validate() const {
    if (layers.empty()) throw std::invalid_argument("layer stack is empty");
    if (!(layer_height > 0)) throw std::invalid_argument("layer_height must be positive");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i > 0 && !(layers[i].z > layers[i - 1].z)) throw std::invalid_argument("layer z values must be strictly increasing");
        for (const auto& r : layers[i].polygons) {
            if (r.outer.size() < 3) throw std::invalid_argument("layer " + std::to_string(i) + " has a polygon with fewer than 3 vertices");
            for (const auto& h : r.holes)
                if (h.size() < 3) throw std::invalid_argument("layer " + std::to_string(i) + " has a hole with fewer than 3 vertices");
        }
    }
}

LayerStack layers_from_json(const std::string& text) {
    const json j = json::parse(text);
    LayerStack stack;
    if (auto u = j.value("units", std::string("mm")); u != "mm") throw std::invalid_argument("unsupported units: " + u);
    stack.layer_height = j.value("layer_height", 0.2);
    for (const auto& lj : j.at("layers")) {
        Layer layer;
        layer.z = lj.at("z").get<double>();
        for (const auto& pj : lj.at("polygons")) {
            Region r;
            r.outer = ring_from_json(pj.at("outer"));
            if (pj.contains("holes"))
                for (const auto& hj : pj.at("holes")) r.holes.push_back(ring_from_json(hj));
            layer.polygons.push_back(std::move(r));
        }
        stack.layers.push_back(std::move(layer));
    }
    stack.validate();
    return stack;
}

std::string layers_to_json(const LayerStack& stack) {
    json layers = json::array();
    for (const auto& layer : stack.layers) {
        json polys = json::array();
        for (const auto& r : layer.polygons) {
            json holes = json::array();
            for (const auto& h : r.holes) holes.push_back(ring_to_json(h));
            polys.push_back({{"outer", ring_to_json(r.outer)}, {"holes", holes}});
        }
        layers.push_back({{"z", layer.z}, {"polygons", polys}});
    }
    return json{{"units", "mm"}, {"layer_height", stack.layer_height}, {"layers", layers}}.dump(1);
}

void PrintConfig::validate() const {
    if (!(extruder_radius > 0)) throw std::invalid_argument("extruder radius must be positive");
    if (!(overhang_c >= 0 && overhang_c <= 1)) throw std::invalid_argument("overhang factor must lie in [0, 1]");
    if (disk_segments < 3) throw std::invalid_argument("disk_segments must be at least 3");
    if (!(cell_size > 0)) throw std::invalid_argument("cell size must be positive");
    if (offset_d < 0) throw std::invalid_argument("offset must be non-negative");
}

std::vector<ContinuityReport> check_epsilon_continuity(const LayerStack& stack, const PrintConfig& cfg) {
    std::vector<ContinuityReport> out;
    for (std::size_t i = 0; i + 1 < stack.layers.size(); ++i) {
        ContinuityReport rep{i, true, {}};
        const auto& lower = stack.layers[i].polygons;
        std::vector<Region> grown;
        if (cfg.epsilon() > 0) {
            grown = minkowski_outset(lower, cfg.epsilon(), cfg.disk_segments);
        } else {
            for (const auto& r : lower) grown.push_back(r.normalized());
        }
        const auto& upper = stack.layers[i + 1].polygons;
        for (std::size_t j = 0; j < upper.size(); ++j)
            if (!region_covered_by(upper[j].normalized(), grown)) {
                rep.continuous = false;
                rep.violating_polygons.push_back(j);
            }
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<LayerPlan> plan_layer(const CellComplex& khat, const std::vector<Region>& layer, const PrintConfig& cfg) {
    std::vector<LayerPlan> out;
    for (std::size_t j = 0; j < layer.size(); ++j) {
        const Region r = layer[j].normalized();
        auto insets = minkowski_inset_components(r, cfg.extruder_radius, cfg.disk_segments);
        if (insets.empty()) {
            LayerPlan lp;
            lp.polygon = j;
            lp.region = r;
            lp.clipped.complex = complex_from_graph({}, {});
            lp.patched.complex = lp.clipped.complex;
            lp.warnings.push_back("polygon " + std::to_string(j) + " is thinner than the extruder; whole boundary left unsupported");
            out.push_back(std::move(lp));
            continue;
        }
        for (auto& inset : insets) {
            LayerPlan lp;
            lp.polygon = j;
            lp.region = r;
            lp.inset = std::move(inset);
            lp.clipped = clip(khat, lp.inset);
            if (lp.clipped.perturbations > 0)
                lp.warnings.push_back("clip region nudged inward " + std::to_string(lp.clipped.perturbations) + " time(s) to avoid a degenerate cut");
            lp.patched = patch(lp.clipped);
            if (lp.patched.components > 1 && lp.clipped.simple_path_components.empty())
                lp.warnings.push_back("patched complex has " + std::to_string(lp.patched.components) + " components");
            lp.support = support_perimeter(r, lp.clipped.region, lp.patched.plan.unpatched, cfg);
            for (const auto& w : lp.support.warnings) lp.warnings.push_back(w);
            out.push_back(std::move(lp));
        }
    }
    return out;
}

}  // namespace eulerfill
