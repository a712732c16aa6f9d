#include <vector>

#include "hodgeft/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hodgeft::cli_run(args);
}
