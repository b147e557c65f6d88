#include "tame3/cli.hpp"

int main(int argc, char** argv) { return tame3::run(argc, argv); }
