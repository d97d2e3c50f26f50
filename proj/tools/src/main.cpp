#include "qgl/report.hpp"
#include "qgl/rmatrix.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"level-one free boson realization toolkit"};
    app.require_subcommand(0);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    std::puts("no subcommand given; see --help");
    return 2;
}
