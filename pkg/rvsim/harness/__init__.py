"""Bench harness: component test benches, scenarios, waveform output."""
