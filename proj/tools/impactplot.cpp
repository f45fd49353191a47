#include "impactplot/impactplot.hpp"

int main(int argc, char** argv) { return impactplot::run_main(argc, argv); }
