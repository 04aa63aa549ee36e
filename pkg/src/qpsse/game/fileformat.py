"""
Plain-text game files.

    # comment
    players leader follower
    nodes
    0 leader L.root a:1 b:2
    3 chance - h:4 t:5
    chance
    3 h 1/2
    3 t 1/2
    terminals
    1 3/4 -1
    2 0 0

The `players` line is required. `nodes` lines are
`<id> <owner> <infoset> <action>:<child>...`; chance nodes
use `-` (or any label) as infoset and get their probabilities from the
`chance` section. `terminals` lines carry exact leader and follower payoffs.
Ids are dense integers 0..n-1, each declared exactly once. `dumps_game`
writes the canonical form, and `parse_game(dumps_game(g))` rebuilds `g`.
"""

from fractions import Fraction
from pathlib import Path

import xxhash

from qpsse.exceptions import FormatError
from qpsse.numeric import format_rational, parse_rational

from .model import GameTree, NodeSpec, Player, build_game

_SECTIONS = ("players", "nodes", "chance", "terminals")


def _error(lineno: int, message: str, line: str) -> FormatError:
    return FormatError(message, context={"line": lineno, "text": line.strip()})


def parse_game(text: str) -> GameTree:
    decisions: dict[int, tuple[Player, str, tuple[str, ...], tuple[int, ...]]] = {}
    terminals: dict[int, tuple[Fraction, Fraction]] = {}
    chance: dict[int, dict[str, Fraction]] = {}
    section: str | None = None
    seen_players = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if tokens[0] in _SECTIONS and (tokens[0] != "players" or not seen_players):
            section = tokens[0]
            if section == "players":
                if tokens[1:] != ["leader", "follower"]:
                    raise _error(lineno, "players must be 'leader follower'", line)
                seen_players = True
            elif len(tokens) != 1:
                raise _error(lineno, f"section header {section!r} takes no arguments", line)
            continue
        try:
            node_id = int(tokens[0])
        except ValueError:
            raise _error(lineno, "expected a node id or a section header", line) from None
        if node_id in decisions or node_id in terminals:
            if section != "chance":
                raise _error(lineno, f"node {node_id} declared twice", line)
        match section:
            case "nodes":
                if len(tokens) < 4:
                    raise _error(lineno, "node line needs owner, infoset and actions", line)
                try:
                    owner = Player(tokens[1])
                except ValueError:
                    raise _error(lineno, f"unknown owner {tokens[1]!r}", line) from None
                actions: list[str] = []
                children: list[int] = []
                for edge in tokens[3:]:
                    name, sep, child = edge.rpartition(":")
                    if not sep or not name:
                        raise _error(lineno, f"edge {edge!r} must be action:child", line)
                    try:
                        children.append(int(child))
                    except ValueError:
                        raise _error(lineno, f"child {child!r} is not an id", line) from None
                    actions.append(name)
                label = "" if owner is Player.CHANCE and tokens[2] == "-" else tokens[2]
                decisions[node_id] = (owner, label, tuple(actions), tuple(children))
            case "terminals":
                if len(tokens) != 3:
                    raise _error(lineno, "terminal line is '<id> <leader> <follower>'", line)
                terminals[node_id] = (parse_rational(tokens[1]), parse_rational(tokens[2]))
            case "chance":
                if len(tokens) != 3:
                    raise _error(lineno, "chance line is '<id> <action> <probability>'", line)
                chance.setdefault(node_id, {})[tokens[1]] = parse_rational(tokens[2])
            case _:
                raise _error(lineno, "content before any section header", line)

    if not seen_players:
        raise FormatError(
            "missing players section",
            help_text="Start the file with a 'players leader follower' line.",
        )
    size = len(decisions) + len(terminals)
    declared = set(decisions) | set(terminals)
    if declared != set(range(size)):
        missing = sorted(set(range(size)) - declared)
        raise FormatError(
            "node ids must be dense 0..n-1",
            context={"missing": missing[:5]},
        )
    for node_id, owner_label in decisions.items():
        for child in owner_label[3]:
            if child not in declared:
                raise FormatError(
                    "edge references an undeclared node",
                    context={"node": node_id, "child": child},
                )

    specs: list[NodeSpec] = []
    for node_id in range(size):
        if node_id in terminals:
            leader, follower = terminals[node_id]
            specs.append(NodeSpec.terminal(leader, follower))
            continue
        owner, label, actions, children = decisions[node_id]
        probs: tuple[Fraction, ...] = ()
        if owner is Player.CHANCE:
            given = chance.get(node_id, {})
            if set(given) != set(actions):
                raise FormatError(
                    "chance section must give one probability per action",
                    context={"node": node_id},
                )
            probs = tuple(given[a] for a in actions)
        elif node_id in chance:
            raise FormatError("probabilities given for a non-chance node", context={"node": node_id})
        specs.append(NodeSpec(owner, label, actions, children, probs))
    return build_game(specs)


def dumps_game(game: GameTree) -> str:
    lines = ["players leader follower", "nodes"]
    chance_lines: list[str] = []
    terminal_lines: list[str] = []
    for node in game.nodes:
        if node.is_terminal:
            assert node.payoff is not None
            leader, follower = node.payoff
            terminal_lines.append(
                f"{node.id} {format_rational(leader)} {format_rational(follower)}"
            )
            continue
        assert node.owner is not None
        edges = " ".join(f"{a}:{c}" for a, c in zip(node.actions, node.children, strict=True))
        lines.append(f"{node.id} {node.owner.value} {node.infoset} {edges}")
        if node.owner is Player.CHANCE:
            chance_lines.extend(
                f"{node.id} {a} {format_rational(p)}"
                for a, p in zip(node.actions, node.probs, strict=True)
            )
    if chance_lines:
        lines.append("chance")
        lines.extend(chance_lines)
    lines.append("terminals")
    lines.extend(terminal_lines)
    return "\n".join(lines) + "\n"


def load_game(path: Path | str) -> GameTree:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read game file: {exc.strerror}", context={"path": str(path)}) from exc
    except UnicodeDecodeError as exc:
        raise FormatError(
            f"game file is not UTF-8 text (byte {exc.start})", context={"path": str(path)}
        ) from exc
    return parse_game(text)


def save_game(game: GameTree, path: Path | str) -> None:
    Path(path).write_text(dumps_game(game), encoding="utf-8")


def game_fingerprint(game: GameTree) -> str:
    """Stable content hash of the canonical text form."""
    return xxhash.xxh64(dumps_game(game).encode("utf-8")).hexdigest()
