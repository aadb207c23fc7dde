#include <algorithm>
#include <set>

#include "eulerfill/complex.hpp"
#include "json.hpp"

namespace eulerfill {
namespace {

using nlohmann::json;

FaceRole role_from(const std::string& s) {
    if (s == "interior") return FaceRole::Interior;
    if (s == "hole") return FaceRole::Hole;
    if (s == "outside") return FaceRole::Outside;
    throw InvalidComplex("unknown face role '" + s + "'");
}

FaceClass class_from(const std::string& s) {
    if (s == "none") return FaceClass::None;
    if (s == "class1") return FaceClass::Class1;
    if (s == "class2") return FaceClass::Class2;
    if (s == "class3") return FaceClass::Class3;
    throw InvalidComplex("unknown face class '" + s + "'");
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::string complex_to_json(const CellComplex& k) {
    json j;
    j["vertices"] = json::array();
    for (auto p : k.vertices) j["vertices"].push_back({p.x, p.y});
    j["faces"] = json::array();
    j["roles"] = json::array();
    j["classes"] = json::array();
    json prov = json::array();
    for (std::size_t f = 0; f < k.faces.size(); ++f) {
        const auto& face = k.faces[f];
        if (face.role == FaceRole::Outside) continue;
        j["faces"].push_back(face.cycles.front());
        j["roles"].push_back(to_string(face.role));
        j["classes"].push_back(to_string(face.cls));
        if (!k.provenance.empty()) prov.push_back({{"class", to_string(k.provenance[f].cls)}, {"source", k.provenance[f].source}});
    }
    if (!k.provenance.empty()) j["provenance"] = prov;
    return j.dump();
}

CellComplex complex_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidComplex(std::string("complex JSON: ") + e.what());
    }
    try {
        std::vector<Point2> pts;
        for (const auto& v : j.at("vertices")) pts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        std::vector<std::vector<int>> cycles;
        for (const auto& f : j.at("faces")) cycles.push_back(f.get<std::vector<int>>());
        const auto n = cycles.size();
        std::vector<std::string> roles(n, "interior"), classes(n, "none");
        if (j.contains("roles")) roles = j["roles"].get<std::vector<std::string>>();
        if (j.contains("classes")) classes = j["classes"].get<std::vector<std::string>>();
        if (roles.size() != n || classes.size() != n) throw InvalidComplex("roles/classes length mismatch");

        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> edges;
        for (const auto& c : cycles) {
            if (c.size() < 3) throw InvalidComplex("face with fewer than 3 vertices");
            for (std::size_t i = 0; i < c.size(); ++i) {
                const int a = c[i], b = c[(i + 1) % c.size()];
                if (a < 0 || b < 0 || a >= static_cast<int>(pts.size()) || b >= static_cast<int>(pts.size()))
                    throw InvalidComplex("vertex index out of range");
                const auto key = std::minmax(a, b);
                if (seen.insert(key).second) edges.push_back(key);
            }
        }
        CellComplex k = complex_from_graph(pts, edges);
        std::map<std::vector<int>, int> traced;
        for (int f = 0; f < static_cast<int>(k.faces.size()); ++f)
            if (k.faces[f].role != FaceRole::Outside) traced[sorted(k.faces[f].cycles.front())] = f;
        std::vector<int> perm;
        std::vector<bool> used(k.faces.size(), false);
        k.provenance.assign(k.faces.size(), {});
        for (std::size_t i = 0; i < n; ++i) {
            auto it = traced.find(sorted(cycles[i]));
            if (it == traced.end() || used[it->second]) throw InvalidComplex("face does not match the traced subdivision");
            used[it->second] = true;
            k.faces[it->second].role = role_from(roles[i]);
            k.faces[it->second].cls = class_from(classes[i]);
            if (j.contains("provenance")) {
                const auto& p = j["provenance"].at(i);
                k.provenance[it->second] = {class_from(p.at("class").get<std::string>()), p.at("source").get<int>()};
            }
            perm.push_back(it->second);
        }
        for (int f = 0; f < static_cast<int>(k.faces.size()); ++f)
            if (!used[f]) perm.push_back(f);
        if (!j.contains("provenance")) k.provenance.clear();
        reorder_faces(k, perm);
        return k;
    } catch (const json::exception& e) {
        throw InvalidComplex(std::string("complex JSON: ") + e.what());
    }
}

}  // namespace eulerfill
