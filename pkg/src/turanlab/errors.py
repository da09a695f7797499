"""Exception types shared across the workbench."""


class TuranLabError(Exception):
    """Base class for all workbench errors."""


class MalformedGraph6(TuranLabError):
    """Input bytes are not a valid graph6 string."""


class WTooSmall(TuranLabError):
    """heavy_viewers requires |W| >= 2s."""


class NotPartite(TuranLabError):
    """Operation requires a partite hypergraph."""


class HypothesisFailed(TuranLabError):
    """Edge-count hypothesis of the cleaning procedure is not met."""


class StuckBelowUniformity(TuranLabError):
    """Cleaning would drop below the target uniformity; retry with a new seed."""


class NotPrimePower(TuranLabError):
    """q is not a prime power (or exceeds the supported range)."""


class BadSpec(TuranLabError):
    """Malformed named-graph request."""


class TrialsExhausted(TuranLabError):
    """Random search used up its trial budget without a verified sample."""


class InequalityFails(TuranLabError):
    """The dependent-random-choice inequality does not hold for this host."""


class RetriesExhausted(TuranLabError):
    """Seeded probabilistic procedure missed its guarantee within the retry budget."""


class NoIndependentSets(TuranLabError):
    """No independent sets of the requested size exist in X."""


class AllEdgesBad(TuranLabError):
    """Every surviving hypergraph edge contains a bad tuple; parameters too aggressive."""


class NoViableCandidate(TuranLabError):
    """Greedy embedding ran out of candidates (relaxed richness only)."""


class PatternPresent(TuranLabError):
    """Host contains an induced copy of the pattern, violating a precondition."""


class TooSparse(TuranLabError):
    """Degree peeling emptied the graph."""


class TooLarge(TuranLabError):
    """Instance exceeds the exact-search guard."""


class CostGuard(TuranLabError):
    """Estimated cost of the exact search exceeds the guard."""


class PreconditionFailed(TuranLabError):
    """A checked operation precondition does not hold."""


class PipelineStageError(TuranLabError):
    """A pipeline stage failed; carries the stage tag and the underlying error."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage={stage}: {cause}")
        self.stage = stage
        self.cause = cause
