#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "eulerfill/errors.hpp"
#include "eulerfill/pipeline.hpp"

namespace eulerfill {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void append_path(ToolPath& into, const ToolPath& part) {
    if (!into.moves.empty() && !part.moves.empty() && !(into.moves.back().to == part.moves.front().from))
        into.moves.push_back({MoveKind::Travel, into.moves.back().to, part.moves.front().from});
    into.moves.insert(into.moves.end(), part.moves.begin(), part.moves.end());
    into.restrictions.insert(into.restrictions.end(), part.restrictions.begin(), part.restrictions.end());
    into.print_walks += part.print_walks;
    into.restriction_fallbacks += part.restriction_fallbacks;
    into.support_loops += part.support_loops;
}

}  // namespace

void JobConfig::validate() const {
    print.validate();
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    if (!(filament_diameter > 0)) throw std::invalid_argument("filament diameter must be positive");
    for (const auto& f : formats)
        if (f != "svg" && f != "gcode" && f != "json") throw std::invalid_argument("unknown output format: " + f);
}

bool JobConfig::wants(const std::string& format) const { return std::find(formats.begin(), formats.end(), format) != formats.end(); }

int JobReport::exit_code() const {
    bool broken = !errors.empty() || khat_odd_vertices > 0 || khat_crossings > 0;
    bool blocked = false;
    for (const auto& l : layers) {
        broken = broken || l.crossovers > 0 || l.odd_vertices > 0;
        blocked = blocked || l.blocking_collisions > 0;
    }
    return broken ? 1 : blocked ? 3 : 0;
}

std::string JobReport::to_json() const {
    json j;
    j["cardinality"] = {{"input", {{"vertices", cardinality.input_vertices}, {"edges", cardinality.input_edges}, {"faces", cardinality.input_faces}}},
                        {"output", {{"vertices", cardinality.vertices}, {"edges", cardinality.edges}, {"faces", cardinality.faces}}},
                        {"holds", cardinality.holds}};
    j["khat"] = {{"odd_vertices", khat_odd_vertices}, {"crossings", khat_crossings}, {"components", khat_components}};
    json cont = json::array();
    for (const auto& c : continuity) cont.push_back({{"lower_layer", c.lower_layer}, {"continuous", c.continuous}, {"violating_polygons", c.violating_polygons}});
    j["continuity"] = cont;
    json ls = json::array();
    for (const auto& l : layers)
        ls.push_back({{"layer", l.layer},
                      {"z", l.z},
                      {"polygons", l.polygons},
                      {"entries", l.entries},
                      {"components", l.components},
                      {"S", l.s_count},
                      {"forced_travel", l.forced_travel},
                      {"crossovers", l.crossovers},
                      {"support_loops", l.support_loops},
                      {"print_walks", l.print_walks},
                      {"edges", l.edges},
                      {"odd_vertices", l.odd_vertices},
                      {"restriction_fallbacks", l.restriction_fallbacks},
                      {"blocking_collisions", l.blocking_collisions},
                      {"warnings", l.warnings}});
    j["layers"] = ls;
    j["timing"] = {{"transform_s", seconds_transform}, {"layers_s", seconds_layers}};
    j["errors"] = errors;
    j["exit_code"] = exit_code();
    return j.dump(1);
}

Polygon job_domain(const LayerStack& stack, bool hull) {
    std::vector<Point2> pts;
    for (const auto& layer : stack.layers)
        for (const auto& r : layer.polygons) pts.insert(pts.end(), r.outer.ring.begin(), r.outer.ring.end());
    if (hull) return convex_hull(pts);
    const auto b = bounding_box(pts);
    return Polygon{{b.min, {b.max.x, b.min.y}, b.max, {b.min.x, b.max.y}}};
}

EulerComplex transform_domain(const CellComplex& input, const JobConfig& cfg, CardinalityCheck* check) {
    const double d = cfg.print.offset_d > 0 ? cfg.print.offset_d : default_offset(input);
    EulerComplex out = cfg.iterations == 1 ? euler_transform(input, d) : generalized_euler_transform(input, d, cfg.iterations);
    if (check) {
        const CellComplex prev = cfg.iterations == 1 ? input : generalized_euler_transform(input, d, cfg.iterations - 1).complex;
        check->input_vertices = prev.num_vertices();
        check->input_edges = prev.num_edges();
        check->input_faces = prev.count_faces(FaceRole::Interior);
        check->vertices = out.complex.num_vertices();
        check->edges = out.complex.num_edges();
        check->faces = out.complex.count_faces(FaceRole::Interior);
        check->holds = check->vertices == 2 * check->input_edges && check->edges == 4 * check->input_edges &&
                       check->faces == check->input_vertices + check->input_edges + check->input_faces;
    }
    return out;
}

LayerResult process_layer(const CellComplex& khat, const Layer& layer, std::size_t index, const PrintConfig& cfg) {
    LayerResult res;
    auto& rep = res.report;
    rep.layer = index;
    rep.z = layer.z;
    rep.polygons = layer.polygons.size();
    res.plans = plan_layer(khat, layer.polygons, cfg);
    rep.entries = res.plans.size();
    for (auto& lp : res.plans) {
        for (const auto& w : lp.warnings) rep.warnings.push_back("polygon " + std::to_string(lp.polygon) + ": " + w);
        if (lp.empty()) {
            res.feasibility.emplace_back();
            continue;
        }
        const CellComplex& k = lp.patched.complex;
        auto tree = circuit_tree(k);
        const auto restrictions = traversal_restrictions(tree, k);
        auto feas = check_extruder_feasibility(lp.patched, cfg);
        const auto path = generate_toolpath(k, tree, restrictions, feas, &lp.support);

        std::set<int> forced_edges;
        for (const auto& f : feas.forced_travel) forced_edges.insert(f.edge);
        for (auto [a, b] : feas.collision_pairs)
            if (lp.patched.arc_of_edge[a] >= 0 && lp.patched.arc_of_edge[b] >= 0 && !forced_edges.count(a) && !forced_edges.count(b))
                ++rep.blocking_collisions;

        rep.components += lp.patched.components;
        rep.s_count += lp.clipped.S.size();
        rep.forced_travel += feas.forced_travel_count();
        rep.crossovers += check_crossovers(path, k).size();
        rep.edges += k.num_edges();
        rep.odd_vertices += verify_euler(k).odd_vertices.size();
        append_path(res.path, path);
        res.feasibility.push_back(std::move(feas));
    }
    rep.support_loops = res.path.support_loops;
    rep.print_walks = res.path.print_walks;
    rep.restriction_fallbacks = res.path.restriction_fallbacks;
    return res;
}

JobResult run_job(const LayerStack& stack, const JobConfig& cfg) {
    stack.validate();
    cfg.validate();
    JobResult job;
    job.report.continuity = check_epsilon_continuity(stack, cfg.print);

    auto t0 = Clock::now();
    job.input = mesh_region(job_domain(stack, cfg.hull_domain), cfg.print.cell_size, cfg.scheme);
    job.khat = transform_domain(job.input, cfg, &job.report.cardinality);
    const auto v = verify_euler(job.khat.complex);
    job.report.khat_odd_vertices = v.odd_vertices.size();
    job.report.khat_crossings = v.crossings.size();
    job.report.khat_components = v.components;
    job.report.seconds_transform = seconds_since(t0);

    t0 = Clock::now();
    job.layers.resize(stack.layers.size());
    std::vector<std::string> failures(stack.layers.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < stack.layers.size();) {
            try {
                job.layers[i] = process_layer(job.khat.complex, stack.layers[i], i, cfg.print);
            } catch (const std::exception& e) {
                failures[i] = "layer " + std::to_string(i) + ": " + e.what();
            }
        }
    };
    const unsigned n = std::min<unsigned>(cfg.jobs, std::max<std::size_t>(stack.layers.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    job.report.seconds_layers = seconds_since(t0);

    for (std::size_t i = 0; i < job.layers.size(); ++i) {
        if (!failures[i].empty()) job.report.errors.push_back(failures[i]);
        job.report.layers.push_back(job.layers[i].report);
    }
    return job;
}

int run_pipeline(const JobConfig& cfg) {
    LayerStack stack;
    JobResult job;
    try {
        std::ifstream in(cfg.layers_path);
        if (!in) throw std::invalid_argument("cannot read " + cfg.layers_path);
        std::stringstream buf;
        buf << in.rdbuf();
        stack = layers_from_json(buf.str());
        job = run_job(stack, cfg);
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotEulerian& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }

    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(fs::path(cfg.out_dir) / name, std::ios::binary) << text;
    };
    if (cfg.wants("svg"))
        for (std::size_t i = 0; i < job.layers.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "layer_%03zu.svg", i);
            write(name, emit_svg(job.layers[i].path));
        }
    if (cfg.wants("gcode")) {
        std::vector<std::pair<double, const ToolPath*>> layers;
        for (std::size_t i = 0; i < job.layers.size(); ++i) layers.push_back({stack.layers[i].z, &job.layers[i].path});
        write("toolpath.gcode", emit_gcode(layers, stack.layer_height, cfg));
    }
    if (cfg.wants("json")) write("report.json", job.report.to_json());
    for (const auto& e : job.report.errors) std::cerr << "error: " << e << "\n";
    return job.report.exit_code();
}

}  // namespace eulerfill
