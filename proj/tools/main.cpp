#include "commands.hpp"

int main(int argc, char** argv) { return slicecalc::cli::main_entry(argc, argv); }
