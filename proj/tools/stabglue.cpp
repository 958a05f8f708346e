#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"stabglue: exact stability-condition checks on quiver models"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "run a scenario");
    (void)run;
    CLI11_PARSE(app, argc, argv);
    std::cerr << "scenario runner not wired yet\n";
    return 2;
}
