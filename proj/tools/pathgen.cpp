// Emits example path-spec JSON files: four circles enclosing 0..3 critical
// values and one polygonal loop, all valid for N = 4.
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

nlohmann::json circle(int basepoint, double cx, double cy, double radius) {
    nlohmann::json j;
    j["type"] = "circle";
    j["basepoint"] = basepoint;
    j["center"] = {cx, cy};
    j["radius"] = radius;
    return j;
}

void write(const std::string& dir, const std::string& name, const nlohmann::json& j) {
    const std::string path = dir + "/" + name;
    std::ofstream os(path);
    if (!os) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    os << j.dump(2) << "\n";
    std::cout << path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : ".";

    write(dir, "circle_c0.json", circle(1, 1.2, 0.0, 0.2));
    write(dir, "circle_c1.json", circle(2, 0.5, 0.0, 1.5));
    write(dir, "circle_c2.json", circle(3, 0.5, 0.0, 2.5));
    write(dir, "circle_c3.json", circle(4, 0.5, 0.0, 3.5));

    nlohmann::json poly;
    poly["type"] = "hermite";
    poly["basepoint"] = 3;
    poly["nodes"] = {{2.8, 1.0}, {0.5, 1.2}, {-0.5, 0.3},
                     {-0.2, -0.9}, {1.5, -1.1}, {2.8, -0.8}};
    poly["tangents"] = {{-1.2, 0.3}, {-1.2, -0.4}, {-0.1, -1.0},
                        {0.8, -0.3}, {1.2, 0.2}, {0.6, 0.6}};
    write(dir, "polygon_c2.json", poly);
    return 0;
}
