#pragma once

#include "output.hpp"

#include <CLI11.hpp>

namespace mpl::cli {

// Each function registers one subcommand on app. The subcommand callback runs
// after parsing and stores its exit code in rc.
void add_classify(CLI::App& app, Globals& g, int& rc);
void add_projdist(CLI::App& app, Globals& g, int& rc);
void add_condc(CLI::App& app, Globals& g, int& rc);
void add_measure(CLI::App& app, Globals& g, int& rc);
void add_kamae(CLI::App& app, Globals& g, int& rc);
void add_beta(CLI::App& app, Globals& g, int& rc);
void add_langw(CLI::App& app, Globals& g, int& rc);
void add_examples(CLI::App& app, Globals& g, int& rc);
void add_graphs(CLI::App& app, Globals& g, int& rc);
void add_verify_all(CLI::App& app, Globals& g, int& rc);

// Registers the global flags shared by every subcommand.
void add_global_flags(CLI::App& app, Globals& g);

// Builds the full command tree.
void build_app(CLI::App& app, Globals& g, int& rc);

// Parses argv and runs the selected subcommand; returns the exit code.
int dispatch(int argc, char** argv);

}  // namespace mpl::cli
