#include "ease/cli.hpp"

int main(int argc, char** argv) { return ease::run_command(argc, argv); }
