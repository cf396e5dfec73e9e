#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <unistd.h>
#include <vector>

int main(int argc, char** argv)
{
    projconn::cli::Options opt;
    char const* env = std::getenv("PROJCONN_COLOR");
    opt.color = isatty(STDOUT_FILENO) && !(env && std::string(env) == "0");
    std::vector<std::string> args(argv + 1, argv + argc);
    return projconn::cli::run(args, std::cout, std::cerr, opt);
}
