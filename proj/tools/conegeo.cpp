#include "conegeo/cli.hpp"

int main(int argc, char** argv) { return conegeo::cli::run(argc, argv); }
