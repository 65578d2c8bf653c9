#include "pcd/cli.hpp"

int main(int argc, char** argv) { return pcd::run_main(argc, argv); }
