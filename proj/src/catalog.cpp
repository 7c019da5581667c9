#include "bvwb/scenario.hpp"

#include <sstream>

namespace bvwb {

namespace {

std::string abelian(int n) {
    std::ostringstream o;
    int N = 2 * n;
    o << "[meta]\nname abelian-" << N << "\ndescription flat torus R^" << N
      << " with standard J, metric and Kaehler form\n\n";
    o << "[algebra]\ndim " << N << "\nbasis";
    for (int i = 1; i <= N; ++i) o << " X" << i;
    o << "\ncoframe";
    for (int i = 1; i <= N; ++i) o << " x" << i;
    o << "\n\n[metric]\ndiagonal";
    for (int i = 1; i <= N; ++i) o << " 1";
    o << "\n\n[complex_structure]\n";
    for (int k = 0; k < n; ++k) {
        o << "J X" << 2 * k + 1 << " -> X" << 2 * k + 2 << "\n";
        o << "J X" << 2 * k + 2 << " -> -X" << 2 * k + 1 << "\n";
    }
    o << "\n[symplectic]\nomega";
    for (int k = 0; k < n; ++k) o << (k ? " + " : " ") << "x" << 2 * k + 1 << "^x" << 2 * k + 2;
    o << "\n\n[poisson]\npi";
    for (int k = 0; k < n; ++k) o << (k ? " + " : " ") << "X" << 2 * k + 1 << "^X" << 2 * k + 2;
    o << "\n\n[lagrangian]\nlag";
    for (int k = 0; k < n; ++k) o << " X" << 2 * k + 1;
    o << "\nlag_prime";
    for (int k = 0; k < n; ++k) o << " X" << 2 * k + 2;
    o << "\n";
    return o.str();
}

const char* kKodairaThurston = R"([meta]
name kodaira-thurston
description Heisenberg x R with symplectic form yt + xz and a compatible non-integrable J

[algebra]
basis X Y Z T
coframe x y z t
bracket X Y -> -1 Z

[metric]
diagonal 1 1 1 1

[complex_structure]
J X -> Z
J Y -> T
J Z -> -X
J T -> -Y

[symplectic]
omega y^t + x^z
)";

const char* kKtPoisson = R"([meta]
name kodaira-thurston-poisson
description Heisenberg x R with the six-parameter Poisson bivector

[algebra]
basis X Y Z T
coframe x y z t
bracket X Y -> -1 Z

[parameters]
a 0
b 1
c 0
e 1
f 0

[metric]
diagonal 1 1 1 1

[poisson]
pi a X^Z + b X^T + c Y^Z + e Y^T + f Z^T

[reference]
poisson-koszul h x^y -> -z
poisson-koszul h x^y^t -> -z^t
poisson-koszul phi1 x^y^t -> e x - b y
poisson-koszul phi1 x^z^t -> -b z
poisson-koszul phi1 y^z^t -> -e z
poisson-koszul m3 x y t -> e x - b y
)";

const char* kKtComplex = R"([meta]
name kodaira-thurston-complex
description Heisenberg x R with the integrable J (JX = Y, JZ = -T), A = X - iY, B = Z + iT

[algebra]
basis X Y Z T
coframe x y z t
bracket X Y -> -1 Z

[metric]
diagonal 1 1 1 1

[complex_structure]
J X -> Y
J Y -> -X
J Z -> -T
J T -> Z
coframe a b abar bbar

[reference]
hermitian-dolbeault h a^abar -> -i b
hermitian-dolbeault phi1 a^abar -> -2i
hermitian-dolbeault m3 a abar bbar -> -2i bbar
)";

const char* kIwasawa = R"([meta]
name iwasawa-lagrangian
description real Iwasawa algebra with the integrable Lagrangian span{X1, X3, X5}

[algebra]
basis X1 X2 X3 X4 X5 X6
coframe x1 x2 x3 x4 x5 x6
bracket X1 X3 -> X5
bracket X2 X4 -> -X5
bracket X1 X4 -> X6
bracket X2 X3 -> X6

[metric]
diagonal 1 1 1 1 1 1

[symplectic]
omega x1^x6 + x2^x5 + x3^x4

[lagrangian]
lag X1 X3 X5
lag_prime X2 X4 X6

[reference]
lagrangian-dolbeault m3 x2 x3 x4 -> x2
)";

}  // namespace

std::vector<std::string> builtin_names() {
    return {"abelian-2",          "abelian-4",        "abelian-6", "kodaira-thurston", "kodaira-thurston-poisson",
            "kodaira-thurston-complex", "iwasawa-lagrangian"};
}

std::string builtin_text(const std::string& name) {
    if (name == "abelian-2") return abelian(1);
    if (name == "abelian-4") return abelian(2);
    if (name == "abelian-6") return abelian(3);
    if (name == "kodaira-thurston") return kKodairaThurston;
    if (name == "kodaira-thurston-poisson") return kKtPoisson;
    if (name == "kodaira-thurston-complex") return kKtComplex;
    if (name == "iwasawa-lagrangian") return kIwasawa;
    throw ScenarioError("unknown built-in '" + name + "'");
}

Scenario builtin(const std::string& name) { return parse_scenario_text(builtin_text(name)); }

}  // namespace bvwb
