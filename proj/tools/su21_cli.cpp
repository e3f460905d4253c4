#include "su21/cli_app.hpp"

int main(int argc, char** argv) { return su21::cli_main(argc, argv); }
