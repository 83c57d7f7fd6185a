#include "gearevo/cli.hpp"

int main(int argc, char** argv) { return gearevo::run_cli(argc, argv); }
