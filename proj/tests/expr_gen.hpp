#pragma once

// Random expression text over the full grammar, for parser round trips.
// With `evaluable` only constructs that evaluate on cotangent(x1, x2 | xi1)
// are produced.

#include <random>
#include <string>

namespace sbt {

class ExprGen {
public:
    explicit ExprGen(unsigned seed, bool evaluable = false) : rng_(seed), evaluable_(evaluable) {}

    std::string expr(int depth) {
        int pick = depth <= 0 ? 0 : roll(evaluable_ ? 8 : 11);
        switch (pick) {
            case 0:
            case 1: return leaf();
            case 2: return expr(depth - 1) + " + " + expr(depth - 1);
            case 3: return expr(depth - 1) + " - " + expr(depth - 1);
            case 4: return expr(depth - 1) + "*" + expr(depth - 1);
            case 5: return "-" + expr(depth - 1);
            case 6: return "(" + expr(depth - 1) + ")^" + std::to_string(roll(3));
            case 7:
                if (evaluable_ && roll(2)) return "pb(" + expr(depth - 1) + ", " + expr(depth - 1) + ")";
                return "d/d" + var() + "(" + expr(depth - 1) + ")";
            case 8: return "sb(" + expr(depth - 1) + ", " + expr(depth - 1) + ")";
            case 9: {
                int k = roll(3);
                std::string s = "hb[" + std::to_string(k) + "](" + expr(depth - 1);
                for (int i = 0; i < k; ++i) s += (i ? ", " : "; ") + expr(depth - 1);
                return s + ")";
            }
            default: {
                switch (roll(4)) {
                    case 0: return "koszul(" + expr(depth - 1) + "; " + expr(depth - 1) + ", d(" + expr(depth - 1) + "))";
                    case 1: return "shift(" + expr(depth - 1) + "; " + expr(depth - 1) + ")";
                    case 2: return "alpha(" + expr(depth - 1) + ")";
                    default: return "shift(" + expr(depth - 1) + "; " + expr(depth - 1) + "; " + leaf() + ")";
                }
            }
        }
    }

private:
    int roll(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }

    std::string var() {
        static const char* evaluable[] = {"x1", "x2", "xi1", "p_x1", "p_x2", "p_xi1"};
        static const char* any[] = {"x1", "xi2", "p_x1", "st_x1", "dx1", "pi_x1", "t", "H"};
        return evaluable_ ? evaluable[roll(6)] : any[roll(8)];
    }

    std::string leaf() {
        switch (roll(4)) {
            case 0: return std::to_string(roll(5));
            case 1: return std::to_string(1 + roll(4)) + "/" + std::to_string(2 + roll(3));
            default: return var();
        }
    }

    std::mt19937 rng_;
    bool evaluable_;
};

}  // namespace sbt
