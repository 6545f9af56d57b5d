#include "commands.hpp"

int main(int argc, char** argv) { return mpl::cli::dispatch(argc, argv); }
