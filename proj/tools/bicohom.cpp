#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "bicohom/cli.hpp"

int main(int argc, char** argv) {
    const char* color = std::getenv("BICOHOM_COLOR");
    const bool styled = isatty(STDOUT_FILENO) && !(color && std::string(color) == "0");
    bicohom::cli::Outcome r = bicohom::cli::run(std::vector<std::string>(argv + 1, argv + argc), styled);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
