#include "otoc/cli.hpp"

int main(int argc, char** argv) { return otoc::dispatch(argc, argv); }
