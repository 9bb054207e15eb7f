#include <string>
#include <vector>

#include "hgsparse/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hgsparse::run_cli(args);
}
