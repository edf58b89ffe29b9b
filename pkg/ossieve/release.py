__version__ = "0.1.0"

__splash__ = ("   ____  _____ _____ _                  \n"
              "  / __ \\/ ___// ___/(_)__ _   _____     \n"
              " / / / /\\__ \\ \\__ \\/ / _ \\ | / / _ \\    \n"
              "/ /_/ /___/ /___/ / /  __/ |/ /  __/    \n"
              "\\____//____//____/_/\\___/|___/\\___/     \n"
              "  order-statistic sieve estimation      ")
