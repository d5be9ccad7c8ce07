from hypothesis import settings

# property tests are seeded so that every run explores the same examples
settings.register_profile("seeded", derandomize=True, print_blob=True)
settings.load_profile("seeded")
