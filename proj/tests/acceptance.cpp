#include <penrose/acceptance.hpp>

#include <iostream>

int main() { return penrose::acceptance::run_all(std::cout) ? 0 : 1; }
