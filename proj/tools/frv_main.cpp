#include <string>
#include <vector>

#include "frv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return frv::run_command(args);
}
