// Command line front end: plan, transform, check, render.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eulerfill/errors.hpp"
#include "eulerfill/pipeline.hpp"

using namespace eulerfill;

namespace {

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string f; std::getline(in, f, ',');)
        if (!f.empty()) out.push_back(f);
    return out;
}

LayerStack read_layers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return layers_from_json(buf.str());
}

void print_cardinality(const CardinalityCheck& c) {
    std::cout << "last pass input: V=" << c.input_vertices << " E=" << c.input_edges << " F=" << c.input_faces << "\n"
              << "transformed:     V=" << c.vertices << " E=" << c.edges << " F=" << c.faces << "\n"
              << "cardinality " << (c.holds ? "holds" : "does not hold") << "\n";
}

int transform(const JobConfig& cfg) {
    const auto stack = read_layers(cfg.layers_path);
    cfg.validate();
    const auto input = mesh_region(job_domain(stack, cfg.hull_domain), cfg.print.cell_size, cfg.scheme);
    CardinalityCheck check;
    const auto khat = transform_domain(input, cfg, &check);
    print_cardinality(check);
    const auto v = verify_euler(khat.complex);
    std::cout << "odd vertices " << v.odd_vertices.size() << ", crossings " << v.crossings.size() << ", components " << v.components << "\n";
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.wants("json")) std::ofstream(std::filesystem::path(cfg.out_dir) / "khat.json") << complex_to_json(khat.complex);
    if (cfg.wants("svg")) std::ofstream(std::filesystem::path(cfg.out_dir) / "khat.svg") << emit_svg(khat.complex);
    return v.odd_vertices.empty() && v.crossings.empty() ? 0 : 1;
}

int check(const JobConfig& cfg) {
    const auto stack = read_layers(cfg.layers_path);
    cfg.validate();
    int status = 0;
    for (const auto& c : check_epsilon_continuity(stack, cfg.print))
        if (!c.continuous) std::cout << "warning: layers " << c.lower_layer << " and " << c.lower_layer + 1 << " are not continuous\n";
    const auto input = mesh_region(job_domain(stack, cfg.hull_domain), cfg.print.cell_size, cfg.scheme);
    const auto vr = validate_input(input);
    std::cout << "input mesh: " << input.num_vertices() << " vertices, " << input.num_edges() << " edges, "
              << input.count_faces(FaceRole::Interior) << " faces; " << (vr.et_ready() ? "ready" : "needs repeated passes") << "\n";
    CardinalityCheck cc;
    const auto khat = transform_domain(input, cfg, &cc);
    print_cardinality(cc);
    const auto v = verify_euler(khat.complex);
    std::cout << "odd vertices " << v.odd_vertices.size() << ", crossings " << v.crossings.size() << ", components " << v.components << "\n";
    if (!v.odd_vertices.empty() || !v.crossings.empty() || !cc.holds) status = 1;
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous crossover-free infill tool paths"};
    app.require_subcommand(1);
    JobConfig cfg;
    std::string formats = "svg,gcode,json";
    std::string mesh = "grid";
    bool bbox = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--layers", cfg.layers_path, "layers JSON file")->required();
        sub->add_option("--cell-size", cfg.print.cell_size, "infill mesh cell size (mm)");
        sub->add_option("--offset", cfg.print.offset_d, "offset distance d (mm); 0 picks a quarter of the first skeleton event");
        sub->add_option("--extruder-radius", cfg.print.extruder_radius, "extruder radius r (mm)");
        sub->add_option("--overhang-c", cfg.print.overhang_c, "overhang factor c, epsilon = c r");
        sub->add_option("--iterations", cfg.iterations, "transformation passes");
        sub->add_option("--jobs", cfg.jobs, "worker threads for layers");
        sub->add_option("--format", formats, "comma separated outputs: svg,gcode,json");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--mesh", mesh, "infill mesh: grid or triangles")->check(CLI::IsMember({"grid", "triangles"}));
        sub->add_flag("--bbox-domain", bbox, "mesh the bounding box instead of the convex hull");
    };
    auto* plan = app.add_subcommand("plan", "full pipeline: tool paths, G-code and report");
    auto* trans = app.add_subcommand("transform", "transform the infill mesh only");
    auto* chk = app.add_subcommand("check", "validate input and transformation invariants");
    auto* render = app.add_subcommand("render", "plan and write per-layer SVG only");
    for (auto* s : {plan, trans, chk, render}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.formats = split_formats(formats);
    cfg.scheme = mesh == "triangles" ? MeshScheme::Triangles : MeshScheme::Grid;
    cfg.hull_domain = !bbox;
    if (render->parsed()) cfg.formats = {"svg"};

    if (plan->parsed() || render->parsed()) return run_pipeline(cfg);
    try {
        return trans->parsed() ? transform(cfg) : check(cfg);
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
}
