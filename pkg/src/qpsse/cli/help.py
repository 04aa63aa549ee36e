"""CLI help text: epilogs and the `QPSSE_*` environment variable reference."""

ENV_EPILOG = """\
Environment variables (CLI flags win over them):

Solver:
  QPSSE_PIVOT_RULE=bland|hybrid
  QPSSE_HYBRID_DEGENERATE_LIMIT=50   (degenerate pivots before hybrid falls back to Bland)
  QPSSE_VERIFY=off|standard|paranoid
  QPSSE_PARANOID_MAX_NODES=200       (largest game the paranoid oracles run on)
  QPSSE_TIMEOUT_PAYOFF=-1000000      (follower payoff on search-game timeout)
  QPSSE_MAX_BNB_NODES=               (empty = exhaustive search)
  QPSSE_CHECK_ETA=0                  (1 = compare η against its LP at every ε)

Telemetry:
  QPSSE_TRACER=auto|tty|json|noop|module:callable
    auto: tty span trees when stderr is a TTY, otherwise json on stderr
"""

_ROOT_EXAMPLES = """\
Examples:
  qpsse generate goofspiel3 --out goofspiel3.game
  qpsse solve --game goofspiel3.game --eps-schedule 1/10,1/100,1/1000 --out-csv sweep.csv
  qpsse solve --game g.game --mode sse-unperturbed --out-solution g.sol
  qpsse validate --game g.game --scheme my.scheme"""

_SOLVE_EXAMPLES = """\
Examples:
  qpsse solve --game g.game --mode sse-unperturbed
  qpsse solve --game g.game --mode sse-perturbed --eps 1/100 --out-solution g.sol
  qpsse solve --game g.game --eps-schedule 1/10,1/100 --out-csv sweep.csv --timeout-seconds 600
  QPSSE_VERIFY=paranoid QPSSE_TRACER=json qpsse solve --game g.game --eps 1/10 --mode sse-perturbed

Scheme files hold '<player> <sequence> <polynomial>' lines, for example:
  leader L.1:a2 e^2
  follower F.1:f1,F.2:g 1/3*e^2 + e^4
Unlisted sequences keep the default bound e^|σ|."""

_GENERATE_EXAMPLES = """\
Examples:
  qpsse generate goofspiel3
  qpsse generate search --horizon 2 --out search-k2.game
  qpsse generate observation1 --out obs1.game"""

ROOT_EPILOG = f"{_ROOT_EXAMPLES}\n\n{ENV_EPILOG}"
SOLVE_EPILOG = f"{_SOLVE_EXAMPLES}\n\n{ENV_EPILOG}"
GENERATE_EPILOG = _GENERATE_EXAMPLES
