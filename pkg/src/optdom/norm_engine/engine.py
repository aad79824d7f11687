import logging
import math
from typing import Any, Dict, List

from tqdm import tqdm

from optdom.norm_engine.entities.analysis_config import AnalysisConfig
from optdom.norm_engine.entities.analysis_report import AnalysisReport, AnalysisStep, ProbeResult
from optdom.norm_engine.entities.factorability_report import ConstantPoint
from optdom.norm_engine.entities.space_spec import Lq
from optdom.norm_engine.errors import OracleDisagreementError
from optdom.norm_engine.factor.constants import best_constant
from optdom.norm_engine.factor.embedding import domination_embedding_check, domination_factorability_bound
from optdom.norm_engine.factor.verdict import check_schedule, verdict_from_constants
from optdom.norm_engine.matop.continuity import continuity_check
from optdom.norm_engine.matop.operations import check_nonzero_columns, describe_matrix
from optdom.norm_engine.seqspace.duals import conjugate_exponent
from optdom.norm_engine.vmeasure.l1m import optimal_domain_norms
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure

logger = logging.getLogger(__name__)


class AnalysisEngine:
    """
    Moteur principal d'analyse d'une matrice M à valeurs dans E = ℓ(c).

    Rôle
    - Vérifie la continuité ℓ¹ → E (encadrements de ‖C_j‖_E).
    - Itère le calendrier de troncatures : pour chaque n, estime C_p(n)
        par montée (démarrée à chaud sur le maximiseur précédent) et journalise
        la colonne la plus lourde et la borne de Hölder partielle.
    - Contrôle la domination 1/p-puissance et l'inclusion ℓ¹(m) ⊂ ℓ^{1/p}(m)
        à une petite taille, puis la borne de factorisation (D·K)^{1/p}.
    - Évalue les normes de domaine optimal des vecteurs sondes.

    Contrat public
    - `run(config)` retourne un `AnalysisReport` ; lève
        `OracleDisagreementError` si l'oracle grille ne confirme pas une montée.
    """

    def __init__(self, verbose: bool = False):
        self.verbose = verbose

    def run(self, config: AnalysisConfig) -> AnalysisReport:
        M, E, p = config.matrix, config.codomain, config.p
        schedule = list(config.schedule)
        check_schedule(p, schedule)
        check_nonzero_columns(M, max(schedule), config.n_E)

        continuity = continuity_check(M, E, schedule, config.n_E, config.use_tail)
        pc = conjugate_exponent(p)
        lower_powers = [c.estimate.lower ** pc for c in continuity.columns]

        constants: List[ConstantPoint] = []
        steps: List[AnalysisStep] = []
        warm = None

        # Boucle principale
        iterator = tqdm(list(enumerate(schedule))) if self.verbose else enumerate(schedule)
        for k, n in iterator:
            point = best_constant(M, E, Lq(p), n, config.restarts, n_E=config.n_E, seed=config.seed,
                                  warm_start=warm)
            if point.confirmed is False:
                raise OracleDisagreementError(
                    f"Grid oracle {point.grid_value:.10g} does not confirm C_p({n}) = {point.value:.10g} "
                    f"for '{M.name}'."
                )
            constants.append(point)
            warm = point.trace.maximizer
            steps.append(AnalysisStep(
                n=n,
                constant=point.value,
                grid_value=point.grid_value,
                iterations=point.trace.iterations,
                column_sup=continuity.running_sup[k],
                column_sup_upper=continuity.running_sup_upper[k],
                hoelder_partial=math.fsum(lower_powers[:n]) ** (1.0 / pc),
            ))

        factorability = verdict_from_constants(M, E, p, schedule, constants, n_E=config.n_E,
                                               use_tail=config.use_tail)

        n_dom = min(config.domination_n, max(schedule))
        domination = domination_embedding_check(M, E, 1.0 / p, n_dom, n_E=config.n_E, n_enum=config.n_enum,
                                                restarts=config.restarts, seed=config.seed)
        bound = domination_factorability_bound(M, E, p, n_dom, n_E=config.n_E, n_enum=config.n_enum,
                                               restarts=config.restarts, seed=config.seed)

        notes = list(factorability.notes)
        if n_dom in schedule:
            c_value = constants[schedule.index(n_dom)].value
            if c_value > bound.bound * (1 + 1e-9) + 1e-12:
                logger.warning("C_p(%d) = %.10g exceeds the domination bound %.10g", n_dom, c_value, bound.bound)
                # D is itself a lower estimate, so either ascent may be short
                notes.append(f"C_p({n_dom}) exceeds the domination factorization bound: an ascent fell short")

        probes = []
        if config.probes:
            m = AtomicVectorMeasure(M, E, config.n_E, n_enum=config.n_enum, seed=config.seed,
                                    use_tail=config.use_tail)
            probes = [ProbeResult(vector=f, norms=optimal_domain_norms(m, f, p)) for f in config.probes]

        logger.info("Analysis of '%s' into %s done: %s", M.name, E.describe(), factorability.verdict.value)
        return AnalysisReport(
            config=_config_summary(config),
            continuity=continuity,
            factorability=factorability,
            steps=steps,
            domination=domination,
            factorization_bound=bound,
            probes=probes,
            notes=notes,
        )


def _config_summary(config: AnalysisConfig) -> Dict[str, Any]:
    return {
        "matrix": describe_matrix(config.matrix),
        "codomain": config.codomain.describe(),
        "p": config.p,
        "schedule": list(config.schedule),
        "n_E": config.n_E,
        "n_enum": config.n_enum,
        "seed": config.seed,
        "restarts": config.restarts,
        "use_tail": config.use_tail,
        "domination_n": config.domination_n,
    }
