import math
from enum import Enum
from typing import Optional

from salem_lp.constants import claims
from salem_lp.constructions import sets
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.lattice import Ambient, ambient_make
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum.predictions import product_exponent
from salem_lp.state.salem_session import SalemSession


class RecipeKinds(Enum):
    sphere = "sphere"
    coneC = "coneC"
    coneD = "coneD"
    cylinder = "cylinder"
    paraboloid = "paraboloid"
    diagonal = "diagonal"
    curve = "curve"
    veronese = "veronese"
    kloosterman = "kloosterman"
    kloosterman_image = "kloosterman_image"
    complement = "complement"
    line = "line"
    singleton = "singleton"
    full = "full"
    random = "random"
    annihilator = "annihilator"
    product = "product"
    subsample = "subsample"


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def _half(ambient: Ambient, p: float) -> float:
    return 0.5


def _one_over_p(ambient: Ambient, p: float) -> float:
    return _inv(p)


def _need_d(least: int):
    def hypothesis(ambient: Ambient) -> Optional[str]:
        if ambient.d < least:
            return f"needs d >= {least}"
        return None
    return hypothesis


class RecipeFactory:

    @staticmethod
    def create(session: SalemSession, name: str, params: dict) -> SetRecipe:
        kind = getattr(RecipeKinds, name, None)
        if kind is None:
            raise SalemValidationException(f"Recipe kind cannot be {name} !")
        params = dict(params)
        match(kind):
            case RecipeKinds.sphere:
                recipe = RecipeFactory.__create_sphere(params)
            case RecipeKinds.coneC | RecipeKinds.coneD:
                recipe = RecipeFactory.__create_cone(kind)
            case RecipeKinds.cylinder:
                recipe = RecipeFactory.__create_cylinder(params)
            case RecipeKinds.paraboloid:
                recipe = RecipeFactory.__create_paraboloid(params)
            case RecipeKinds.diagonal:
                recipe = RecipeFactory.__create_diagonal(params)
            case RecipeKinds.curve:
                recipe = RecipeFactory.__create_curve(params)
            case RecipeKinds.veronese:
                recipe = RecipeFactory.__create_veronese()
            case RecipeKinds.kloosterman:
                recipe = RecipeFactory.__create_kloosterman()
            case RecipeKinds.kloosterman_image:
                recipe = SetRecipe("kloosterman_image", sets.kloosterman_image, s_theory=_half,
                                   claim=claims.CLAIM_KLOOSTERMAN_CURVE)
            case RecipeKinds.complement:
                recipe = RecipeFactory.__create_complement(params)
            case RecipeKinds.line:
                recipe = RecipeFactory.__create_line(params)
            case RecipeKinds.singleton:
                recipe = RecipeFactory.__create_singleton(params)
            case RecipeKinds.full:
                recipe = SetRecipe("full", sets.full)
            case RecipeKinds.random:
                recipe = RecipeFactory.__create_random(params)
            case RecipeKinds.annihilator:
                recipe = RecipeFactory.__create_annihilator(session)
            case RecipeKinds.product:
                recipe = RecipeFactory.__create_product(session, params)
            case RecipeKinds.subsample:
                recipe = RecipeFactory.__create_subsample(params)
        if params:
            raise SalemValidationException(f"Unknown parameters for {name}: {sorted(params)}")
        return recipe

    @staticmethod
    def __create_sphere(params: dict) -> SetRecipe:
        r = params.pop("r", 1)

        def s_theory(ambient: Ambient, p: float) -> float:
            if ambient.field.element(r).idx != 0:
                return 0.5
            d = ambient.d
            return (d - 2) / (2 * (d - 1)) + _inv(p) / (d - 1)

        def hypothesis(ambient: Ambient) -> Optional[str]:
            if ambient.d < 2:
                return "needs d >= 2"
            if ambient.field.element(r).idx == 0 and ambient.d == 2 and not sets.minus_one_is_square(ambient):
                return "sphere of radius zero in the plane is the origin when -1 is not a square (d >= 3 needed)"
            return None

        radius_zero = isinstance(r, int) and r == 0
        return SetRecipe("sphere", lambda ambient: sets.sphere(ambient, r), {"r": r}, s_theory, hypothesis,
                         claims.CLAIM_SPHERE_ZERO if radius_zero else claims.CLAIM_SALEM_SPHERE)

    @staticmethod
    def __create_cone(kind: RecipeKinds) -> SetRecipe:
        def s_theory(ambient: Ambient, p: float) -> float:
            d = ambient.d
            if math.isinf(p):
                return (d - 2) / (2 * (d - 1))
            return (p * (d - 2) + 2) / (2 * p * (d - 1))

        construct = sets.cone_C if kind == RecipeKinds.coneC else sets.cone_D
        return SetRecipe(kind.value, construct, {}, s_theory, _need_d(3), claims.CLAIM_CONES)

    @staticmethod
    def __create_cylinder(params: dict) -> SetRecipe:
        r = params.pop("r", 1)

        def s_theory(ambient: Ambient, p: float) -> float:
            d = ambient.d
            if math.isinf(p):
                return (d - 2) / (2 * (d - 1))
            return (2 + (d - 2) * p) / (2 * p * (d - 1))

        return SetRecipe("cylinder", lambda ambient: sets.cylinder(ambient, r), {"r": r}, s_theory,
                         _need_d(3), claims.CLAIM_CYLINDER)

    @staticmethod
    def __create_paraboloid(params: dict) -> SetRecipe:
        y = params.pop("y", 1)
        return SetRecipe("paraboloid", lambda ambient: sets.paraboloid(ambient, y), {"y": y}, _half,
                         _need_d(2), claims.CLAIM_PARABOLOID)

    @staticmethod
    def __create_diagonal(params: dict) -> SetRecipe:
        n = int(params.pop("n", 1))

        def hypothesis(ambient: Ambient) -> Optional[str]:
            if n >= ambient.d:
                return "diagonal with n = d is the whole space"
            return None

        return SetRecipe("diagonal", lambda ambient: sets.diagonal(ambient, n), {"n": n}, _one_over_p,
                         hypothesis, claims.CLAIM_DIAGONAL)

    @staticmethod
    def __create_curve(params: dict) -> SetRecipe:
        if "f" not in params:
            raise SalemValidationException("curve needs f=[...] with one polynomial per coordinate")
        polys = params.pop("f")
        if not isinstance(polys, list):
            raise SalemValidationException(f"curve components must be a list, got {polys!r}")
        polys = [str(poly) if not isinstance(poly, list) else poly for poly in polys]

        def s_theory(ambient: Ambient, p: float) -> Optional[float]:
            n = sets.curve_report(ambient, polys).span_dimension
            if n == ambient.d:
                return 0.5
            if math.isinf(p) or p < 2 * n:
                return None
            return n / p

        def hypothesis(ambient: Ambient) -> Optional[str]:
            report = sets.curve_report(ambient, polys)
            if report.weil_flags:
                return f"component degrees {report.weil_flags} divisible by p"
            if report.span_dimension == 0:
                return "constant curve"
            return None

        return SetRecipe("curve", lambda ambient: sets.polynomial_curve(ambient, polys), {"f": polys},
                         s_theory, hypothesis, claims.CLAIM_CURVES)

    @staticmethod
    def __create_veronese() -> SetRecipe:
        def hypothesis(ambient: Ambient) -> Optional[str]:
            if ambient.field.p <= ambient.d:
                return "needs p > d so that no component degree is divisible by p"
            return None

        return SetRecipe("veronese", sets.veronese, {}, _half, hypothesis, claims.CLAIM_VERONESE)

    @staticmethod
    def __create_kloosterman() -> SetRecipe:
        def s_theory(ambient: Ambient, p: float) -> Optional[float]:
            if ambient.d == 2:
                return 0.5
            if p < 4:
                return None
            return 2.0 * _inv(p)

        return SetRecipe("kloosterman", sets.kloosterman_curve, {}, s_theory, _need_d(2),
                         claims.CLAIM_KLOOSTERMAN_CURVE)

    @staticmethod
    def __create_complement(params: dict) -> SetRecipe:
        k = int(params.pop("k", 1))

        def s_theory(ambient: Ambient, p: float) -> float:
            d = ambient.d
            return 1.0 - k / d + k * _inv(p) / d

        return SetRecipe("complement", lambda ambient: sets.subspace_complement(ambient, k), {"k": k},
                         s_theory, None, claims.CLAIM_COMPLEMENT)

    @staticmethod
    def __create_line(params: dict) -> SetRecipe:
        k = int(params.pop("k", 1))

        def hypothesis(ambient: Ambient) -> Optional[str]:
            if not 1 <= k < ambient.d:
                return "needs 1 <= k < d"
            return None

        return SetRecipe("line", lambda ambient: sets.subspace(ambient, k), {"k": k}, _one_over_p,
                         hypothesis, claims.CLAIM_SUBSPACE)

    @staticmethod
    def __create_singleton(params: dict) -> SetRecipe:
        point = int(params.pop("point", 0))
        return SetRecipe("singleton", lambda ambient: sets.singleton(ambient, point), {"point": point})

    @staticmethod
    def __create_random(params: dict) -> SetRecipe:
        alpha = float(params.pop("alpha", 1.0))
        seed = int(params.pop("seed", 0))
        return SetRecipe("random", lambda ambient: sets.random_set(ambient, alpha, seed),
                         {"alpha": alpha, "seed": seed}, _half, None, claims.CLAIM_RANDOM)

    @staticmethod
    def __create_annihilator(session: SalemSession) -> SetRecipe:
        def construct(ambient: Ambient):
            return sets.annihilator_of_plane(ambient, session.annihilator_cache).annihilator

        def hypothesis(ambient: Ambient) -> Optional[str]:
            if ambient.field.p == 2 or ambient.d < 3 or ambient.d % 2 == 0:
                return "needs q odd and d odd >= 3"
            if not sets.minus_one_is_square(ambient):
                return "needs -1 to be a square"
            return None

        return SetRecipe("annihilator", construct, {}, _one_over_p, hypothesis, claims.CLAIM_ANNIHILATOR)

    @staticmethod
    def __create_product(session: SalemSession, params: dict) -> SetRecipe:
        left, right = params.pop("left", None), params.pop("right", None)
        if not isinstance(left, SetRecipe) or not isinstance(right, SetRecipe):
            raise SalemValidationException("product needs left=<recipe> and right=<recipe>")
        k = int(params.pop("k", 1))

        def factors(ambient: Ambient) -> tuple[Ambient, Ambient]:
            if not 1 <= k < ambient.d:
                raise SalemValidationException(f"product needs 1 <= k < d, got k={k}, d={ambient.d}")
            return (ambient_make(ambient.field, k, session.max_index),
                    ambient_make(ambient.field, ambient.d - k, session.max_index))

        def construct(ambient: Ambient):
            a, b = factors(ambient)
            return sets.direct_sum(left.build(a), right.build(b), session.max_index)

        def s_theory(ambient: Ambient, p: float) -> Optional[float]:
            a, b = factors(ambient)
            s, t = left.predicted(a, p), right.predicted(b, p)
            size_e, size_f = left.build(a).cardinality, right.build(b).cardinality
            if s is None or t is None or size_e < 2 or size_f < 2:
                return None
            return product_exponent(s, t, size_e, size_f, k, ambient.d, ambient.q, p)

        return SetRecipe("product", construct, {"left": left, "right": right, "k": k}, s_theory, None,
                         claims.CLAIM_PRODUCT)

    @staticmethod
    def __create_subsample(params: dict) -> SetRecipe:
        source = params.pop("of", None)
        if not isinstance(source, SetRecipe):
            raise SalemValidationException("subsample needs of=<recipe>")
        if "size" not in params:
            raise SalemValidationException("subsample needs size=<n>")
        size = int(params.pop("size"))
        seed = int(params.pop("seed", 0))
        return SetRecipe("subsample", lambda ambient: sets.subsample(source.build(ambient), size, seed),
                         {"of": source, "size": size, "seed": seed})
