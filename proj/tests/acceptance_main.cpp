// Runs every acceptance criterion on the reference configuration (or a
// supplied config file) and prints one pass/fail line per criterion.
#include <iostream>

#include "qweyl/verify.hpp"

int main(int argc, char** argv) {
    try {
        qweyl::Config cfg =
            argc > 1 ? qweyl::Config::load(argv[1]) : qweyl::Config::reference();
        auto results = qweyl::run_suite(cfg, "all");
        std::cout << qweyl::format_text_report(results);
        return qweyl::all_passed(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
