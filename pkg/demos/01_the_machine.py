#!/usr/bin/env python3
"""A first look at the restricted machine.

Registers hold fixed-width unsigned words that wrap around; the instruction
set is increment, decrement, AND, OR, assignment, branches, and OUT.  The
only constant anywhere is zero.  Every executed instruction costs one step,
and INC/DEC are additionally counted on their own meter -- that second meter
is the whole point of the laboratory.
"""

from countones import Word, execute, parse_program

SOURCE = """\
; count the ones of x by clearing the lowest set bit per pass
loop: BZ x done     ; finished once x is empty
MOV t x
DEC t               ; t = x - 1
AND x t             ; deletes the right-most one of x
INC c
JMP loop
done: OUT c
"""

program = parse_program(SOURCE)
print(f"parsed {len(program)} instructions, registers {program.register_names}")

x = Word.from_bits("1011")
result = execute(program, x, trace=True)
print(f"input {x.to_bits()} -> output {result.output.value}")
print(f"steps: {result.counters.total_steps} total, "
      f"{result.counters.incdec_steps} inc/dec")

print("\nfirst few snapshots (inc/dec meter, just-executed pc, registers):")
for snap in result.trace[:8]:
    print(f"  i={snap.incdec_index}  pc={snap.pc}  {snap.registers}")

print("\nwraparound is load-bearing:")
print("  1111 + 1 ->", execute(parse_program("INC x\nOUT x"), Word(4, 0b1111)).output.to_bits())
print("  0000 - 1 ->", execute(parse_program("DEC x\nOUT x"), Word(4, 0)).output.to_bits())
