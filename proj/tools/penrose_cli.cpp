#include <penrose/acceptance.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return penrose::cli::run_cli(args, std::cout, std::cerr,
                                 [](std::ostream& o) { return penrose::acceptance::run_all(o); });
}
