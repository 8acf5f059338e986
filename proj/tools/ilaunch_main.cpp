#include <ilaunch/cli/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    ilaunch::cli::configure_logging();
    std::vector<std::string> args(argv + 1, argv + argc);
    return ilaunch::cli::run_cli(args, std::cout, std::cerr);
}
