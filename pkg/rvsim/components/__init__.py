"""Datapath components: PC, register file, ALU, control unit, memories."""
