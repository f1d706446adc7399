"""Print the desk-scale table of bounds (pass a sweep size to change it)."""
import sys

from scenario_sched.harness import table, table_markdown

print(table_markdown(table(int(sys.argv[1]) if len(sys.argv) > 1 else 200)))
