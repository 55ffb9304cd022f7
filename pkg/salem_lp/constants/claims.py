# Claims a check or a sweep band verifies, written into every run record.

CLAIM_SALEM_SPHERE = "spheres of non-zero radius are Salem"
CLAIM_SPHERE_ZERO = "sphere of radius zero is (p, (d-2)/(2(d-1)) + 1/(p(d-1)))-Salem"
CLAIM_CONES = "cones C^d and D^d are (p, (p(d-2)+2)/(2p(d-1)))-Salem"
CLAIM_CYLINDER = "cylinder S_r^(d-2) (+) F_q is (p, (2+(d-2)p)/(2p(d-1)))-Salem"
CLAIM_PARABOLOID = "generalised paraboloids are Salem"
CLAIM_DIAGONAL = "diagonal {(k, ..., k)} has exact spectrum q^(n-d) on its annihilator"
CLAIM_CURVES = "polynomial curves spanning n < d dimensions are (p, n/p)-Salem, Salem when n = d"
CLAIM_VERONESE = "Veronese curve is Salem"
CLAIM_KLOOSTERMAN_CURVE = "Kloosterman curve is Salem for d = 2 and (p, 2/p)-Salem for d >= 3"
CLAIM_SUBSPACE = "subspaces F_q^k x {0} are (p, 1/p)-Salem"
CLAIM_COMPLEMENT = "F_q^d minus a k-plane is (p, 1 - k/d + k/(pd))-Salem"
CLAIM_PRODUCT = "direct sums inherit the three-way minimum exponent of their factors"
CLAIM_RANDOM = "generic sets of size q^alpha are (p, 1/2)-Salem up to C(q)"
CLAIM_ANNIHILATOR = "annihilator of an isotropic line is (p, 1/p)-Salem"

CLAIM_PLANCHEREL = "Plancherel: sum |Ê|^2 = q^-d #E"
CLAIM_HOLDER = "every set is (p, 1/p)-Salem with constant 1"
CLAIM_CLOSED_FORM = "computed spectrum equals the closed form entrywise"
CLAIM_FACTORIZATION = "spectrum of E (+) F factorizes"
CLAIM_SIDON = "Sidon sets satisfy the two-sided sumset norm inequality"
CLAIM_SUMSET = "sumset chain (prod #E_i)^2 <= #(sum E_i)(...) with Hölder conjugates"
CLAIM_SPHERICAL = "spherical averages bounded by max #S_t q^d ||Ê||_4^4"
CLAIM_DISTANCE = "#D(E) >~ q ^ q^(1-d) (#E)^(4s) for (4, s)-Salem E, q odd"
CLAIM_SIMPLICES = "simplex signatures never outnumber congruence classes"
CLAIM_LEVEL_SETS = "uniformly Salem level sets give exponent (alpha p + 2)/(2p(alpha + 1))"
CLAIM_BIGSETS = "sets with small complement: t <= s(inf) <= t'"
CLAIM_KLOOSTERMAN = "|K(a, b)| <= 2 sqrt(q) for ab != 0"
CLAIM_CHARSUM_LINK = "q^d Ê_{f(F_q)} = conj(S_f) for injective f"
CLAIM_WEIL = "|S_f(z)| <= (n - 1) sqrt(q) for phases of degree n prime to p"
CLAIM_MONTE_CARLO = "P(||X^||_p > C(q) q^-d q^(alpha/2)) = O(1/C(q))"
