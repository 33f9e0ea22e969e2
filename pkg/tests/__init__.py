# Tests for qo-workbench
