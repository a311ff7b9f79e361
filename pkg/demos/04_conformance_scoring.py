"""
Fitness, precision and the F_beta score
=======================================

Fitness asks how close each trace is to some word of the model (via an
optimal insert/delete alignment); precision asks how much the model
enables that the log never does (escaping edges). F_beta combines the
two, with beta shifting the weight.
"""

from protomine import (
    EventLog,
    alignment_cost,
    choice_parallel_net,
    deviating_traces,
    etc_precision,
    f_beta,
    flower_net,
    log_fitness,
    trace_fitness,
)

net = choice_parallel_net()
log = EventLog(
    {
        ("a", "d", "c", "e"): 9,  # a word of the model
        ("a", "b", "d", "e"): 4,  # also a word
        ("a", "e"): 2,            # two activities short
    }
)

for trace in log.variants:
    result = alignment_cost(trace, net)
    print(
        f"{' -> '.join(trace):24s} cost {result.cost}  "
        f"fitness {float(trace_fitness(trace, net)):.3f}  "
        f"aligned to {' '.join(result.model_projection)}"
    )

print("\nlog fitness:", float(log_fitness(log, net)))
print("deviating variants:", dict(deviating_traces(log, net).variants))

# precision: the tight model scores 1.0 on its own behaviour, the
# flower (anything goes) scores much lower on the same log
tight = etc_precision(log, net)
loose = etc_precision(log, flower_net(log.activities))
print(f"\nprecision on the real net:   {tight:.3f}")
print(f"precision on the flower net: {loose:.3f}")

fitness = float(log_fitness(log, net))
for beta in (0.5, 1.0, 2.0):
    print(f"F_{beta}: {f_beta(tight, fitness, beta):.4f}")
