// Regenerates the bundled workspace files under fixtures/.

#include <fstream>
#include <iostream>

#include "sepeq/bundled.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    for (const std::string& key : sepeq::bundled_workspace_keys()) {
        std::string path = dir + "/" + key + ".json";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        out << sepeq::serialize_workspace(sepeq::bundled_workspace(key));
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}
