#include "specsense/cli_app.hpp"

int main(int argc, char** argv) { return specsense::cli_main(argc, argv); }
