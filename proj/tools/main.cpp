#include "app.hpp"

int main(int argc, char **argv) { return axionkit::app::run(argc, argv); }
