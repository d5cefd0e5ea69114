"""Digit-level tasks: one token per time step.
============================================

Tokens 0..b-1 are digits, b is the blank between terms, b+1 the
delimiter.  A numeric instance feeds n stream tokens then s delimiters;
the target answers with n delimiters then the next s stream tokens.
The reverse-order task echoes its digits backwards instead.
"""

from numseq import SeedContext, StreamConfig, make_reverse_instance, token_stream
from numseq.digitstream import DIGIT_TASKS, make_digit_instance
from numseq.rules import fixed_difference, linear, rounded_geometric


def show(name, tokens):
    glyphs = {10: "_", 11: "|"}  # blank, delimiter
    print(f"  {name:<8}", " ".join(glyphs.get(t, str(t)) for t in tokens))


# ---------------------------------------------------------------------------
# Streams: little-endian digits of successive terms, one blank after each.
# ---------------------------------------------------------------------------

print("token streams (base 10, '_' = blank):")
show("count+17", token_stream(fixed_difference(17), [100], 10, 16))
show("fib", token_stream(linear(1, 1), [2, 3], 10, 16))
show("geom1.3", token_stream(rounded_geometric(13, 10), [10], 10, 12))

# ---------------------------------------------------------------------------
# A full instance: n=12 input tokens + s=12 delimiters each side.
# ---------------------------------------------------------------------------

task = DIGIT_TASKS["fibonacci"]
inst = make_digit_instance("fibonacci", StreamConfig(), task.train_split, SeedContext(7, 0))
print(f"\nfibonacci instance from initial terms {inst.initial_terms}:")
show("input", inst.input_tokens)
show("target", inst.target_tokens)

# ---------------------------------------------------------------------------
# Reverse order: m digits + m delimiters in, digits reversed out.
# ---------------------------------------------------------------------------

rev = make_reverse_instance(6, 10, SeedContext(7, 1))
print("\nreverse-order instance (m=6):")
show("input", rev.input_tokens)
show("target", rev.target_tokens)
assert rev.target_tokens[6:] == rev.input_tokens[:6][::-1]
print("target tail is the input head reversed.")
