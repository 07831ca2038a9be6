# Professional Test Suite