#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "nlsb/config.hpp"
#include "nlsb/testcases.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "data/tc3_bubbles.json";
    try {
        nlsb::RunConfig cfg;
        cfg.testcase = 0;
        cfg.bubbles = nlsb::fitTc3Profile();

        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot open " << path << '\n';
            return 1;
        }
        out << nlsb::serializeRunConfig(cfg);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    std::cout << "wrote " << path << '\n';
    return 0;
}
