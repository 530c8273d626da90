bounds_doc = """
Command line::
Bounds Documentation

rcsp's bounds mode computes certified intervals on the joint decoding error
probabilities P_1..P_m of one scheme, the Monte Carlo and quadrature oracle
values, and the resulting latency and throughput intervals.

Usage:
    rcsp bounds --snr-db SNR --bits K --increments I1,I2,... [options]
    rcsp bounds --config scheme.json [options]
    rcsp bounds help

Scheme Arguments:
    --snr-db            Channel SNR in dB
    --bits              Information bits per message, log2(M)
    --increments        Comma separated increments I_1,...,I_m
    --radius            Radius assumption: optimistic, minkowski or
                        minkowski:<c>. [Default=optimistic]
    --config            JSON/YAML scheme document with keys snr_db, k_bits,
                        increments and radius_assumption. Flags override
                        the document.

Optional Arguments:
    --methods           Comma separated bound methods. [Choices = trivial,
                        chernoff, general, union, decomposition, inglot, exact]
                        [Default=configuration.yaml bounds.methods]
    --samples           Monte Carlo samples of the oracle, 0 disables it
                        [Default=100000]
    --seed              Monte Carlo seed [Default=20120903]
    --format            Output format [Choices = json, csv] [Default=json]
    --out               Write the report to a file instead of stdout
    --log-file          Write logs to a file instead of stderr

Exit Codes:
    0                   success
    2                   invalid arguments, configuration or schedule
    3                   degenerate scheme (P_m = 1, infinite latency)

Help Arguments:
    help                Displays rcsp's bounds mode documentation
"""

curve_doc = """
Command line::
Curve Documentation

rcsp's curve mode produces one latency/throughput row per information bit
count, for plotting throughput against latency next to the capacity line.

Usage:
    rcsp curve --snr-db SNR --bits-list K1,K2,... [--max-transmissions M]
               [--optimize | --one-bit | --step S] [options]
    rcsp curve help

Required Arguments:
    --snr-db            Channel SNR in dB (or snr_db from --config)
    --bits-list         Comma separated information bit counts

Schedule Arguments:
    --max-transmissions Number of transmissions m [Default=5]
    --optimize          Optimize the increments for each k
    --one-bit           Use I_1 = k followed by 2k one-symbol increments
    --step              Use I_1 = k followed by constant steps of this size
                        until N_m >= 3k
                        Without a schedule flag a uniform schedule starting
                        slightly above capacity is used.
    --budget            Optimizer evaluation budget [Default=300]

Optional Arguments:
    --radius            Radius assumption [Default=optimistic]
    --methods           Comma separated bound methods
    --samples           Monte Carlo samples for rows with m > 2
    --seed              Monte Carlo seed [Default=20120903]
    --format            Output format [Choices = csv, json] [Default=csv]
    --out               Write the rows to a file instead of stdout
    --config            Scheme document providing snr_db and radius_assumption
    --log-file          Write logs to a file instead of stderr

CSV Columns:
    k_bits, m, increments, latency_lower, latency_upper, latency_exact_or_mc,
    throughput_lower, throughput_upper, capacity, flags

Help Arguments:
    help                Displays rcsp's curve mode documentation
"""

simulate_doc = """
Command line::
Simulate Documentation

rcsp's simulate mode simulates the decoding time of the retransmission
scheme: attempts until the first success, restarts and latency per message.

Usage:
    rcsp simulate --snr-db SNR --bits K --increments I1,I2,... [--cycles N]
    rcsp simulate help

Scheme Arguments:
    --snr-db            Channel SNR in dB
    --bits              Information bits per message, log2(M)
    --increments        Comma separated increments I_1,...,I_m
    --radius            Radius assumption [Default=optimistic]
    --config            Scheme document, flags override it

Optional Arguments:
    --cycles            Number of simulated messages [Default=100000]
    --samples           Monte Carlo samples for the expected latency
                        reference, 0 disables it [Default=100000]
    --seed              Seed [Default=20120903]
    --format            Output format [Choices = json, csv] [Default=json]
    --out               Write the report to a file instead of stdout
    --log-file          Write logs to a file instead of stderr

Help Arguments:
    help                Displays rcsp's simulate mode documentation
"""

cli_docs = f"""
rcsp Documentation

rcsp's command line interface

Usage:
    rcsp [mode] [mode options]
    rcsp help

Required Arguments:
    mode                rcsp cli instruction on what to execute. There are
                        4 modes [bounds, curve, simulate, help]. Bounds
                        certifies one scheme. Curve produces latency versus
                        throughput rows. Simulate simulates decoding times.
                        Help displays the help message documentation.
Help Argument:
    help                Displays rcsp's CLI help and mode documentation

Environment:
    RCSP_THREADS        Caps the number of worker threads

Mode Documentations:
{bounds_doc.replace("Command line::", "")}
{curve_doc.replace("Command line::", "")}
{simulate_doc.replace("Command line::", "")}
"""
