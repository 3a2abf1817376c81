#pragma once

// Random model texts for the oracle comparisons.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

struct GenOptions {
    int max_depth = 4;
    int max_cells = 4;      ///< decision variables, counting matrix cells
    int max_values = 4;     ///< per decision domain
    int max_constraints = 3;
    bool objective = false; ///< add a random linear objective
    bool globals = true;
};

class ModelGenerator {
public:
    explicit ModelGenerator(std::uint64_t seed, GenOptions opts = {}) : rng_(seed), opts_(opts) {}

    std::string model();

    /// Random ground integer expression of the given depth over literals in -20..20.
    std::string ground_int(int depth);
    /// Random int expression over the named variables, magnitude-bounded.
    std::string int_over(const std::vector<std::string>& vars, int depth);

private:
    struct Cell {
        std::string name;     ///< scalar name, or matrix name
        bool is_bool = false;
        int dims = 0;         ///< 0 scalar, 1 or 2 for matrices
        std::vector<std::int64_t> keys; ///< index keys per dimension
        std::vector<std::int64_t> values;
    };
    struct Expr {
        std::string text;
        double mag = 0; ///< bound on |value|
    };

    std::mt19937_64 rng_;
    GenOptions opts_;
    std::vector<Cell> decls_;
    std::vector<std::pair<std::string, std::pair<int, int>>> qvars_;
    int fresh_ = 0;
    bool ground_only_ = false; ///< inside comprehension conditions

    int pick(int lo, int hi);
    bool coin(int percent);
    Expr gen_int(int depth);
    std::string gen_bool(int depth);
    Expr int_leaf();
    std::string bool_leaf();
    std::string ground_index(std::int64_t lo, std::int64_t hi);
    std::string cell_ref(bool want_bool);
    std::string global(int depth);
    std::string int_list(int depth, int n);
    std::string domain_text(const std::vector<std::int64_t>& values);
};

} // namespace oracle
