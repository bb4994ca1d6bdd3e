#include "tailwave/cli.hpp"

int main(int argc, char** argv) { return tailwave::run_command(argc, argv); }
