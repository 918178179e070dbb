#include "mgtkit/cli.hpp"

int main(int argc, char** argv) {
    return mgtkit::cli::dispatch(argc, argv);
}
