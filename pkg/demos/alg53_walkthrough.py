"""Step through alg53 on a four-job instance where its invariant cannot be kept.

Prints the load table, anticipation and the three invariant clauses after each job,
then the final ratio against the exact optimum.
"""
from fractions import Fraction

from scenario_sched.algorithms import Alg53, check_invariant1
from scenario_sched.core import AssignmentState, Instance, anticipation_of_loads
from scenario_sched.oracle import exact_opt

inst = Instance(2, 2, ((Fraction(4, 5), {2}), (2, {1}), (Fraction(7, 8), {2}), (2, {1, 2})))
alg = Alg53()
st = AssignmentState(2, 2)
for j, job in enumerate(inst.jobs, 1):
    i = alg.assign(st, job.p, job.scenarios)
    st.push(job.p, job.scenarios, i)
    loads = [[str(x) for x in row] for row in st.loads]
    print(f"job {j}: p={job.p} S={sorted(job.scenarios)} -> machine {i}  loads={loads}  "
          f"alpha={anticipation_of_loads(st.loads)}  invariant={check_invariant1(st)}")
opt = exact_opt(inst)
print(f"online {st.ms}, optimum {opt.value} via {opt.witness}, ratio {st.ms / opt.value}")
