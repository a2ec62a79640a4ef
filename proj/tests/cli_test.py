"""End-to-end checks of the aspa command line: outputs, exit codes, env caps, determinism, JSON schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

ASPA, ROOT = sys.argv[1], sys.argv[2]
CORPUS = os.path.join(ROOT, "corpus")
SCHEMA = json.load(open(os.path.join(ROOT, "docs", "aspa-output.schema.json")))
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    p = subprocess.run([ASPA, *args], capture_output=True, text=True, env=e, timeout=300)
    return p.returncode, p.stdout, p.stderr


def expect(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def c(name):
    return os.path.join(CORPUS, name)


# golden outputs
code, out, _ = run("solve", c("p1.aspa"))
expect(code == 0 and out == "Answer: 1\n{p(a), p(b)}\nAnswer: 2\n{q}\nSATISFIABLE\n", "solve p1: " + out)
code, out, _ = run("solve", c("p3.aspa"))
expect(code == 0 and out == "UNSATISFIABLE\n", "solve p3: " + out)
code, out, _ = run("solve", c("p7.aspa"))
expect(code == 0 and out == "Answer: 1\n{}\nSATISFIABLE\n", "solve p7: " + out)
code, out, _ = run("solve", c("p5.aspa"), "--limit", "1")
expect(code == 0 and out.count("Answer:") == 1, "solve p5 --limit 1")
code, out, _ = run("check", c("p6.aspa"), "--model", "p(1),p(-1)", "--semantics", "all")
expect(code == 0 and out.splitlines()[0].startswith("aspa:no flp:yes stableset:yes"), "check p6: " + out)
code, out, _ = run("check", c("p6.aspa"), "--model", "p(1),p(-1)", "--semantics", "flp")
expect(code == 0 and out.splitlines()[0] == "flp:yes", "check p6 flp: " + out)
code, out, _ = run("check", c("p1.aspa"))
expect(code == 0 and out.rstrip().endswith("OK"), "check p1: " + out)
code, out, _ = run("classify", c("p1.aspa"))
expect(code == 0 and "aggregate-stratified: no" in out and "monotone: false" in out, "classify p1: " + out)
code, out, _ = run("ground", c("p2.aspa"))
expect(code == 0 and "q :- SUM{ X : p(X) } > 10." in out, "ground p2: " + out)
code, out, _ = run("unfold", c("p3.aspa"))
expect(code == 0 and out == "p(2).\np(1) :- p(2), not p(1).\n", "unfold p3: " + out)
code, out, _ = run("solutions", c("p1.aspa"), "--full", "--atom", "1")
expect(code == 0 and "solutions (5)" in out, "solutions p1: " + out)
code, out, _ = run("translate-weights", c("p7.aspa"))
expect(code == 0 and "agg_neg_1(1,1) :- p(0)." in out, "translate p7: " + out)
p = subprocess.run([ASPA, "solve-normal", "-"], input="a :- not b.\nb :- not a.\n", capture_output=True, text=True)
expect(p.returncode == 0 and p.stdout == "Answer: 1\n{a}\nAnswer: 2\n{b}\nSATISFIABLE\n", "solve-normal stdin: " + p.stdout)
code, out, _ = run("bench", "nm1", "seating", "--no-timings")
expect(code == 0 and out.count("oracle=ok") == 2, "bench: " + out)
code, out, _ = run("bench", "--emit", "nm2")
expect(code == 0 and "MIN{ Y : p(Y) } > K" in out, "bench emit: " + out)

with tempfile.TemporaryDirectory() as tmp:
    model = os.path.join(tmp, "m.txt")
    open(model, "w").write("student(a), student(b), student(c), gotA(a), gotA(b)\n")
    code, out, _ = run("unfold", c("p5.aspa"), "--wrt", model)
    expect(code == 0 and "gotA(a).\n" in out and "gotA(b).\n" in out and "gotA(c).\n" not in out,
           "unfold --wrt: " + out)
    bad = os.path.join(tmp, "bad.aspa")
    open(bad, "w").write("p(X) :- q.\n")
    code, _, err = run("solve", bad)
    expect(code == 1 and "unsafe variable X" in err and err.startswith(bad + ":1:"), "parse error exit: " + err)

# usage and resource errors
expect(run()[0] == 1, "no subcommand")
expect(run("frobnicate")[0] == 1, "unknown subcommand")
expect(run("solve", "/nonexistent.aspa")[0] == 1, "missing file")
expect(run("--help")[0] == 0, "help")
expect(run("solve-normal", c("p1.aspa"))[0] == 1, "solve-normal rejects aggregates")
expect(run("unfold", c("p5.aspa"))[0] == 1, "unfold rejects aggregate heads")
expect(run("solve", c("p5.aspa"), "--max-ground", "2")[0] == 2, "ground cap flag")
expect(run("solve", c("p5.aspa"), env={"ASPA_MAX_GROUND": "2"})[0] == 2, "ground cap env")
expect(run("solve", c("p5.aspa"), env={"ASPA_MAX_CANDIDATES": "1"})[0] == 2, "candidate cap env")
expect(run("solve", c("p1.aspa"), env={"ASPA_MAX_NODES": "1"})[0] == 2, "node cap env")
expect(run("solve", c("p1.aspa"), env={"ASPA_MAX_GROUND": "0"})[0] == 1, "non-positive cap")
expect(run("solve", c("p5.aspa"), "--max-ground", "1000", env={"ASPA_MAX_GROUND": "2"})[0] == 0, "flag overrides env")
expect(run("solutions", c("p1.aspa"), "--atom", "9")[0] == 1, "atom index out of range")
expect(run("solve", c("p1.aspa"), "--full", "--minimal")[0] == 1, "exclusive flags")

# determinism and schema
invocations = [
    ["solve", c("p1.aspa")], ["solve", c("p5.aspa")], ["solve", c("p7.aspa")], ["solve", c("p3.aspa")],
    ["ground", c("p2.aspa")], ["solutions", c("p1.aspa")], ["solutions", c("p2.aspa"), "--full"],
    ["unfold", c("p4.aspa"), "--full"], ["check", c("p6.aspa"), "--model", "p(1),p(-1)"], ["check", c("p5.aspa")],
    ["check", c("p2.aspa")], ["classify", c("extra/reach_hubs.aspa")], ["classify", c("p5.aspa")],
    ["translate-weights", c("p7.aspa")], ["bench", "nm2", "party-invitations", "--no-timings"], ["bench", "nm1"],
]
for args in invocations:
    code1, out1, _ = run(*args, "--json")
    code2, out2, _ = run(*args, "--json")
    expect(code1 == 0, "json exit " + " ".join(args))
    try:
        jsonschema.validate(json.loads(out1), SCHEMA)
    except Exception as e:  # noqa: BLE001
        expect(False, "schema " + " ".join(args) + ": " + str(e)[:300])
    if "bench" not in args or "--no-timings" in args:
        expect(out1 == out2, "deterministic json " + " ".join(args))
    t1 = run(*args)[1]
    t2 = run(*args)[1]
    if "bench" not in args or "--no-timings" in args:
        expect(t1 == t2, "deterministic text " + " ".join(args))

print("cli: %d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
