#include "pyrtex/cli.hpp"

int main(int argc, char** argv) {
    return pyrtex::cli::run(argc, argv);
}
