"""Reference machines: the automata that solve digit-level tasks exactly.
=======================================================================

Fixed-difference counting needs only a fixed bank of digit registers
(finite state); reverse order needs one stack (pushdown); arithmetic,
Fibonacci and rounded-geometric continuation need retained terms of
unbounded size (queue).  Every machine reads the task input once and
emits one output token per input token, so its output scores like any
model prediction -- and scores zero error.
"""

from numseq import (
    SeedContext,
    StreamConfig,
    build_counter_transducer,
    build_queue_transducer,
    build_reverse_pda,
    classify_task,
    make_reverse_instance,
    run_transducer,
)
from numseq.digitstream import DIGIT_TASKS, make_digit_instance

# ---------------------------------------------------------------------------
# The automaton hierarchy per task.
# ---------------------------------------------------------------------------

print("task classification (machine class / minimal grammar):")
for kind in ("fixed_difference", "reverse", "arithmetic", "fibonacci", "geometric"):
    mc = classify_task(kind)
    print(f"  {kind:<16} {mc.name:<9} {mc.grammar}")

# ---------------------------------------------------------------------------
# The counter machine: L digit registers, L*b cells, finite state.
# ---------------------------------------------------------------------------

counter = build_counter_transducer(17, base=10, max_digits=4)
print(f"\ncounter machine: {counter.register_cells} register cells (L=4, b=10)")
print(f"  equivalent-state upper bound: {counter.machine_class.state_count_estimate:,}")
print(f"  ({counter.machine_class.state_count_formula})")

task = DIGIT_TASKS["fixed_difference"]
inst = make_digit_instance("fixed_difference", StreamConfig(), task.val_split, SeedContext(1, 5))
out = run_transducer(counter, inst.input_tokens)
assert out == inst.target_tokens
print("  validation instance transduced exactly.")

# ---------------------------------------------------------------------------
# The reverse machine: stack high-water mark equals the digit count.
# ---------------------------------------------------------------------------

pda = build_reverse_pda(10)
for m in (3, 12, 16, 40):
    inst = make_reverse_instance(m, 10, SeedContext(2, m))
    assert run_transducer(pda, inst.input_tokens) == inst.target_tokens
    assert pda.stack_high_water == m
print("\nreverse PDA exact for m in {3, 12, 16, 40}; high-water mark == m each time.")

# ---------------------------------------------------------------------------
# Queue machines: digit-serial continuation with carry registers.
# ---------------------------------------------------------------------------

print("\nqueue machines on 200 random validation instances each:")
for kind in ("arithmetic", "fibonacci", "geometric"):
    machine = build_queue_transducer(kind, 10)
    task = DIGIT_TASKS[kind]
    wrong = 0
    for i in range(200):
        inst = make_digit_instance(kind, StreamConfig(), task.val_split, SeedContext(3, i))
        if run_transducer(machine, inst.input_tokens) != inst.target_tokens:
            wrong += 1
    print(f"  {kind:<11} mismatches: {wrong}")
