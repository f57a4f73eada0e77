#include <cstdlib>
#include <iostream>

#include "dirichlet/suite.hpp"

int main() {
    const char* env = std::getenv("SEED");
    const uint64_t seed = env ? std::strtoull(env, nullptr, 10) : dirichlet::kDefaultSeed;
    return dirichlet::run_acceptance_suite(std::cout, seed) == 0 ? 0 : 1;
}
